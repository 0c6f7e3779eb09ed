//! The operators T_i, F_i, E_i, N on (S + V)^(x n), checked against the
//! defining relations with both readings of E_i.

use framed_rook::tensor::relations::verify_ry_relations;
use framed_rook::tensor::{EMode, Op, TensorBasisWord, TensorRep, TensorVector};

fn main() -> framed_rook::Result<()> {
    let rep = TensorRep::new(2, 2, EMode::Explicit)?;
    let w = TensorBasisWord::all(2, 2)?.into_iter().find(|w| w.to_string() == "v1^1⊗v2^2").unwrap();
    let x = TensorVector::basis(2, w.clone());
    for op in [Op::T(1), Op::F(1, 1), Op::E(1), Op::N] {
        let y = rep.apply_op(&op, &x);
        let terms: Vec<String> = y.terms().map(|(w, c)| format!("({c}) {w}")).collect();
        println!("{op:?} {w} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }
    for mode in [EMode::Explicit, EMode::Averaged] {
        let report = verify_ry_relations(&TensorRep::new(2, 2, mode)?)?;
        let failing: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        println!("{mode:?}: {}/{} relations hold; failing {failing:?}", report.checks.len() - failing.len(), report.checks.len());
    }
    Ok(())
}
