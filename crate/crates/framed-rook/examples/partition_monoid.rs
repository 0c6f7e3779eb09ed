//! Concatenate set partitions of [2n] and check the presentation of P_n.

use framed_rook::partitions::{concatenate, diagram_from_word, domain, transpose};

fn main() -> framed_rook::Result<()> {
    let x = diagram_from_word(&[2, 0, 3])?;
    let y = diagram_from_word(&[0, 1, 2])?;
    println!("x = 203       {x}");
    println!("y = 012       {y}");
    println!("x * y         {}", concatenate(&x, &y)?);
    println!("transpose(x)  {}", transpose(&x)?);
    println!("dom(x)        {:?}", domain(&x)?);
    println!("{}", framed_rook::partitions::verify_pn_presentation(3)?);
    Ok(())
}
