//! Length, inversion sets and a Bruhat factorization of one element of Q.

use framed_rook::rook::{bfs_length, bruhat_factor, canon, compressed, format_pairs, inversion_sets, RookMatrix};

fn main() -> framed_rook::Result<()> {
    let s = canon(&RookMatrix::parse("0 0 0 0 0; 0 0 0 0 2; 5 0 0 0 0; 0 0 3 0 0; 0 0 0 0 0", 7)?);
    let sets = inversion_sets(&s);
    println!("sigma  = {}", s.matrix.to_text());
    println!("sigma* = {}", compressed(&s).to_text());
    println!("sigma~ = {}", s.support.to_text());
    println!("inv {}  inv_L {}  inv_R {}", format_pairs(&sets.inv), format_pairs(&sets.inv_l), format_pairs(&sets.inv_r));
    println!("length {} (search: {})", s.length, bfs_length(&s));
    println!("sigma = {}", bruhat_factor(&s));
    Ok(())
}
