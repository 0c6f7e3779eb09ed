//! Multiply basis elements of H(M,U) by the generator rules and by brute-force
//! convolution.

use framed_rook::hecke::{general_product, ConvolutionOracle, HeckeElement};
use framed_rook::rook::{canon, RookMatrix};

fn main() -> framed_rook::Result<()> {
    let oracle = ConvolutionOracle::new(2, 3)?;
    let s1 = canon(&RookMatrix::parse("0 1; 1 0", 3)?);
    let e11 = canon(&RookMatrix::parse("1 0; 0 0", 3)?);
    for (a, b) in [(&s1, &s1), (&s1, &e11), (&e11, &s1)] {
        let rule = general_product(&HeckeElement::basis(a.clone()), &HeckeElement::basis(b.clone()))?;
        let lit = oracle.product(a, b)?;
        println!("T[{a}] T[{b}] = {rule}   (oracle agrees: {})", rule == lit);
    }
    Ok(())
}
