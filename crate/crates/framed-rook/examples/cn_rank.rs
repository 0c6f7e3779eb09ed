//! Certify that rho(C_n) is linearly independent and closed under the
//! generators, for n = 2 and d = 2.

use framed_rook::suites::default_points;
use framed_rook::tensor::basis::{certificate_check, cn_matrix, cn_word, rank_certificate, spanning_closure, RankMethod};
use framed_rook::tensor::{EMode, TensorRep};

fn main() -> framed_rook::Result<()> {
    let rep = TensorRep::new(2, 2, EMode::Averaged)?;
    let m = cn_matrix(&rep)?;
    println!("|C_2| = {}, tensor basis words = {}", m.index.len(), m.words.len());
    for x in m.index.iter().take(5) {
        println!("{x}  ->  {:?}", cn_word(&rep, x));
    }
    let points = default_points();
    let cert = rank_certificate(&m, &points, RankMethod::Exact)?;
    println!("{}", serde_json::to_string(&cert).unwrap());
    println!("{:?}", certificate_check(&cert));
    println!("{:?}", spanning_closure(&rep, &m, &points[0], None)?);
    Ok(())
}
