//! Framed partial permutations: products, transposes and the normal form.

use framed_rook::framed::{count, evaluate_word, normal_form, word_string, FramedPartial};

fn main() -> framed_rook::Result<()> {
    let q = 7;
    let x = FramedPartial::parse("05130–02530", q)?;
    let y = FramedPartial::parse("30402–50302", q)?;
    println!("x = {}, transpose = {}", x.to_text(), x.transpose().to_text());
    println!("x y = {}", x.multiply(&y)?.to_text());
    let nf = normal_form(&x);
    println!("normal form: {nf}");
    println!("word: {}", word_string(&nf.to_word()));
    assert_eq!(evaluate_word(&nf.to_word(), 5, q)?, x);
    for n in 1..=4 {
        println!("|F_{q}(I_{n})| = {}", count(n, q));
    }
    Ok(())
}
