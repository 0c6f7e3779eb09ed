//! Relation suites for the tensor operators, checked on every basis word
//! with symbolic coefficients.

use rayon::prelude::*;

use super::{EMode, Letter, Op, OpExpr, TensorBasisWord, TensorRep, TensorVector};
use crate::error::Result;
use crate::perm;
use crate::report::{Check, Report};
use crate::ring::CycloLaurent;

/// A named instance lhs = rhs.
pub struct Relation {
    pub label: String,
    pub lhs: OpExpr,
    pub rhs: OpExpr,
}

fn rel(label: impl Into<String>, lhs: OpExpr, rhs: OpExpr) -> Relation {
    Relation { label: label.into(), lhs, rhs }
}

/// The first basis word on which lhs and rhs differ.
pub fn first_counterexample(rep: &TensorRep, words: &[TensorBasisWord], r: &Relation) -> Option<String> {
    words
        .par_iter()
        .find_first(|w| {
            let x = TensorVector::basis(rep.d(), (*w).clone());
            rep.eval(&r.lhs, &x) != rep.eval(&r.rhs, &x)
        })
        .map(|w| {
            let x = TensorVector::basis(rep.d(), w.clone());
            format!("{} at {w}: {} vs {}", r.label, rep.eval(&r.lhs, &x), rep.eval(&r.rhs, &x))
        })
}

fn family(rep: &TensorRep, words: &[TensorBasisWord], name: &str, anchor: &str, rels: Vec<Relation>) -> Check {
    let failures: Vec<String> = rels.iter().filter_map(|r| first_counterexample(rep, words, r)).collect();
    Check::from_failures(name, anchor, rels.len(), failures)
}

fn params(rep: &TensorRep) -> Vec<(&'static str, String)> {
    let mode = match rep.mode() {
        EMode::Averaged => "averaged",
        EMode::Explicit => "explicit",
    };
    vec![("n", rep.n().to_string()), ("d", rep.d().to_string()), ("E", mode.to_string())]
}

/// The defining relations, the reduced N relations and the inverse formula.
pub fn verify_ry_relations(rep: &TensorRep) -> Result<Report> {
    let (n, d) = (rep.n(), rep.d());
    let words = rep.basis_words()?;
    let u = || CycloLaurent::u_pow(d, 1);
    let one = || OpExpr::identity(d);
    let h = rep.half_exponent();
    let mut report = Report::new("tensor relations", &params(rep).iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>());
    let mut push = |name: &str, anchor: &str, rels: Vec<Relation>| report.push(family(rep, &words, name, anchor, rels));

    push(
        "braid",
        "T_i T_(i+1) T_i = T_(i+1) T_i T_(i+1)",
        (1..n.saturating_sub(1))
            .map(|i| rel(format!("i={i}"), OpExpr::word(&[Op::T(i), Op::T(i + 1), Op::T(i)]), OpExpr::word(&[Op::T(i + 1), Op::T(i), Op::T(i + 1)])))
            .collect(),
    );
    let mut far = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            far.push(rel(format!("i={i},j={j}"), OpExpr::word(&[Op::T(i), Op::T(j)]), OpExpr::word(&[Op::T(j), Op::T(i)])));
        }
    }
    push("far commutation", "T_i T_j = T_j T_i for |i-j| > 1", far);
    push(
        "framing order",
        "F_i^d = 1",
        (1..=n).map(|i| rel(format!("i={i}"), rep.f(i).pow(d as usize), one())).collect(),
    );
    let mut fc = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            fc.push(rel(format!("i={i},j={j}"), rep.f(i).times(rep.f(j)), rep.f(j).times(rep.f(i))));
        }
    }
    push("framings commute", "F_i F_j = F_j F_i", fc);
    push(
        "quadratic",
        "T_i^2 = u + (u-1) F_i^((d^2-d)/2) E_i T_i",
        (1..n)
            .map(|i| {
                let rhs = one().scaled(u()).plus(rep.f_pow(i, h).times(rep.e(i)).times(rep.t(i)).scaled(u() - CycloLaurent::one(d)));
                rel(format!("i={i}"), rep.t(i).pow(2), rhs)
            })
            .collect(),
    );
    let mut ft = Vec::new();
    for i in 1..n {
        for j in 1..=n {
            let js = if j == i { i + 1 } else if j == i + 1 { i } else { j };
            ft.push(rel(format!("i={i},j={j}"), rep.t(i).times(rep.f(j)), rep.f(js).times(rep.t(i))));
        }
    }
    push("framing transport", "T_i F_j = F_(j s_i) T_i", ft);
    let mut fnu: Vec<Relation> = (1..n).map(|i| rel(format!("i={i}"), rep.f(i).times(rep.nu()), rep.nu().times(rep.f(i + 1)))).collect();
    fnu.push(rel("N F_1", rep.nu().times(rep.f(1)), rep.nu()));
    fnu.push(rel("F_n N", rep.f(n).times(rep.nu()), rep.nu()));
    push("framing through N", "F_i N = N F_(i+1); N F_1 = F_n N = N", fnu);
    let mut absorb = Vec::new();
    for i in 1..n {
        absorb.push(rel(format!("left i={i}"), rep.nu().pow(i + 1).times(rep.t(i)), rep.nu().pow(i + 1).scaled(u())));
        absorb.push(rel(format!("right i={i}"), rep.t(i).times(rep.nu().pow(n - i + 1)), rep.nu().pow(n - i + 1).scaled(u())));
    }
    push("N absorbs T", "N^(i+1) T_i = u N^(i+1); T_i N^(n-i+1) = u N^(n-i+1)", absorb);
    let mut shift: Vec<Relation> =
        (1..n.saturating_sub(1)).map(|i| rel(format!("i={i}"), rep.t(i).times(rep.nu()), rep.nu().times(rep.t(i + 1)))).collect();
    shift.push(rel(
        "N T_1...T_(n-1) N",
        OpExpr::Prod(vec![rep.nu(), rep.t_chain(), rep.nu()]),
        rep.nu().scaled(CycloLaurent::u_pow(d, n as i32 - 1)),
    ));
    push("N shifts T", "T_i N = N T_(i+1); N T_1...T_(n-1) N = u^(n-1) N", shift);
    let mut reduced = Vec::new();
    if n >= 2 {
        reduced.push(rel("N^2 T_1", rep.nu().pow(2).times(rep.t(1)), rep.nu().pow(2).scaled(u())));
        reduced.push(rel("T_(n-1) N^2", rep.t(n - 1).times(rep.nu().pow(2)), rep.nu().pow(2).scaled(u())));
    }
    push("reduced N relations", "N^2 T_1 = u N^2; T_(n-1) N^2 = u N^2", reduced);
    let mut inv = Vec::new();
    for i in 1..n {
        inv.push(rel(format!("T_i T_i^-1, i={i}"), rep.t(i).times(rep.t_inv(i)), one()));
        inv.push(rel(format!("T_i^-1 T_i, i={i}"), rep.t_inv(i).times(rep.t(i)), one()));
    }
    push("inverse", "T_i^-1 = u^-1 T_i - (1 - u^-1) F_i^((d^2-d)/2) E_i", inv);
    push(
        "E_i as framing average",
        "E_i = (1/d) sum_k F_i^k F_(i+1)^(-k) as operators",
        (1..n).map(|i| rel(format!("i={i}"), OpExpr::Gen(Op::E(i)), rep.e_averaged(i))).collect(),
    );
    Ok(report)
}

/// Relations among R = T_1...T_(n-1) N, the R_i, P = u^(1-n) R and the P_i.
pub fn verify_alternative_presentations(rep: &TensorRep) -> Result<Report> {
    let (n, d) = (rep.n(), rep.d());
    let words = rep.basis_words()?;
    let u = || CycloLaurent::u_pow(d, 1);
    let mut report = Report::new("alternative presentations", &params(rep).iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>());
    let mut push = |name: &str, anchor: &str, rels: Vec<Relation>| report.push(family(rep, &words, name, anchor, rels));
    let r = rep.r();
    let p = rep.p();
    let prod = |v: Vec<OpExpr>| OpExpr::Prod(v);

    push("R idempotent up to scalar", "R^2 = u^(n-1) R", vec![rel("R^2", r.clone().pow(2), r.clone().scaled(CycloLaurent::u_pow(d, n as i32 - 1)))]);
    push(
        "R commutes with T_i, i > 1",
        "T_i R = R T_i, i > 1",
        (2..n).map(|i| rel(format!("i={i}"), rep.t(i).times(r.clone()), r.clone().times(rep.t(i)))).collect(),
    );
    let mut rt = Vec::new();
    if n >= 2 {
        let mid = prod(vec![r.clone(), rep.t_inv(1), r.clone()]).scaled(u());
        rt.push(rel("R T_1^-1 R T_1 = u R T_1^-1 R", prod(vec![r.clone(), rep.t_inv(1), r.clone(), rep.t(1)]), mid.clone()));
        rt.push(rel("u R T_1^-1 R = T_1 R T_1^-1 R", mid, prod(vec![rep.t(1), r.clone(), rep.t_inv(1), r.clone()])));
    }
    push("R and T_1", "R T_1^-1 R T_1 = u R T_1^-1 R = T_1 R T_1^-1 R", rt);
    let mut rf: Vec<Relation> = (1..=n).map(|i| rel(format!("F_{i} R"), rep.f(i).times(r.clone()), r.clone().times(rep.f(i)))).collect();
    rf.push(rel("R F_1", r.clone().times(rep.f(1)), r.clone()));
    push("R and framings", "F_i R = R F_i; R F_1 = R", rf);

    let ri: Vec<OpExpr> = (1..=n).map(|i| rep.r_i(i)).collect();
    let rr = |i: usize| ri[i - 1].clone();
    push(
        "R_i idempotent up to scalar",
        "R_i^2 = u^(n-1) R_i",
        (1..=n).map(|i| rel(format!("i={i}"), rr(i).pow(2), rr(i).scaled(CycloLaurent::u_pow(d, n as i32 - 1)))).collect(),
    );
    push(
        "T_i conjugates R_i",
        "T_i R_i = R_(i+1) T_i",
        (1..n).map(|i| rel(format!("i={i}"), rep.t(i).times(rr(i)), rr(i + 1).times(rep.t(i)))).collect(),
    );
    let mut far = Vec::new();
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            far.push(rel(format!("i={i},j={j}"), rep.t(i).times(rr(j)), rr(j).times(rep.t(i))));
        }
    }
    push("T_i commutes with far R_j", "T_i R_j = R_j T_i, j not in {i, i+1}", far);
    let mut pair = Vec::new();
    for i in 1..n {
        let base = rr(i + 1).times(rr(i));
        pair.push(rel(format!("R_(i+1) R_i T_i, i={i}"), base.clone().times(rep.t(i)), base.clone().scaled(u())));
        pair.push(rel(format!("T_i R_(i+1) R_i, i={i}"), rep.t(i).times(base.clone()), base.scaled(u())));
    }
    push("adjacent R_i absorb T_i", "R_(i+1) R_i T_i = u R_(i+1) R_i = T_i R_(i+1) R_i", pair);
    let mut frj = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            frj.push(rel(format!("F_{i} R_{j}"), rep.f(i).times(rr(j)), rr(j).times(rep.f(i))));
        }
        frj.push(rel(format!("R_{i} F_{i}"), rr(i).times(rep.f(i)), rr(i)));
    }
    push("R_i and framings", "F_i R_j = R_j F_i; R_i F_i = R_i", frj);

    push("P idempotent", "P^2 = P", vec![rel("P^2", p.clone().pow(2), p.clone())]);
    push(
        "P commutes with T_i, i > 1",
        "T_i P = P T_i, i > 1",
        (2..n).map(|i| rel(format!("i={i}"), rep.t(i).times(p.clone()), p.clone().times(rep.t(i)))).collect(),
    );
    let mut pt = Vec::new();
    if n >= 2 {
        let mid = prod(vec![p.clone(), rep.t_inv(1), p.clone()]).scaled(u());
        pt.push(rel("P T_1^-1 P T_1 = u P T_1^-1 P", prod(vec![p.clone(), rep.t_inv(1), p.clone(), rep.t(1)]), mid.clone()));
        pt.push(rel("u P T_1^-1 P = T_1 P T_1^-1 P", mid, prod(vec![rep.t(1), p.clone(), rep.t_inv(1), p.clone()])));
    }
    push("P and T_1", "P T_1^-1 P T_1 = u P T_1^-1 P = T_1 P T_1^-1 P", pt);
    let mut pf: Vec<Relation> = (1..=n).map(|i| rel(format!("F_{i} P"), rep.f(i).times(p.clone()), p.clone().times(rep.f(i)))).collect();
    pf.push(rel("P F_1", p.clone().times(rep.f(1)), p.clone()));
    push("P and framings", "F_i P = P F_i; P F_1 = P", pf);

    let pi: Vec<OpExpr> = (1..=n).map(|i| rep.p_i(i)).collect();
    let pp = |i: usize| pi[i - 1].clone();
    push("P_i idempotent", "P_i^2 = P_i", (1..=n).map(|i| rel(format!("i={i}"), pp(i).pow(2), pp(i))).collect());
    push(
        "P_(i+1) from P_i",
        "P_(i+1) = u P_i T_i^-1 P_i",
        (1..n).map(|i| rel(format!("i={i}"), pp(i + 1), prod(vec![pp(i), rep.t_inv(i), pp(i)]).scaled(u()))).collect(),
    );
    let mut ptj = Vec::new();
    for i in 1..=n {
        for j in 1..n {
            if i < j {
                ptj.push(rel(format!("P_{i} T_{j} = T_{j} P_{i}"), pp(i).times(rep.t(j)), rep.t(j).times(pp(i))));
            } else if j < i {
                ptj.push(rel(format!("P_{i} T_{j} = u P_{i}"), pp(i).times(rep.t(j)), pp(i).scaled(u())));
                ptj.push(rel(format!("T_{j} P_{i} = u P_{i}"), rep.t(j).times(pp(i)), pp(i).scaled(u())));
            }
        }
    }
    push("P_i and T_j", "P_i T_j = T_j P_i, i < j; P_i T_j = T_j P_i = u P_i, j < i", ptj);
    let mut pfj = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            pfj.push(rel(format!("F_{i} P_{j}"), rep.f(i).times(pp(j)), pp(j).times(rep.f(i))));
            if j <= i {
                pfj.push(rel(format!("P_{i} F_{j}"), pp(i).times(rep.f(j)), pp(i)));
            }
        }
    }
    push("P_i and framings", "F_i P_j = P_j F_i; P_i F_j = P_i, j <= i", pfj);
    Ok(report)
}

/// T-bar_B = T_{n-r+1,b_1} ... T_{n,b_r}.
pub fn t_bar(rep: &TensorRep, b: &[usize]) -> Vec<Op> {
    let (n, r) = (rep.n(), b.len());
    b.iter().enumerate().flat_map(|(j, &bj)| rep.t_kj(n - r + j + 1, bj)).collect()
}

/// T_A = T_{a_1,1} ... T_{a_r,r}.
pub fn t_a(rep: &TensorRep, a: &[usize]) -> Vec<Op> {
    a.iter().enumerate().flat_map(|(j, &aj)| rep.t_kj(aj, j + 1)).collect()
}

/// Support behaviour of T-bar_B, N^(n-r) and T_w on basis words.
pub fn verify_support_laws(rep: &TensorRep) -> Result<Report> {
    let (n, d) = (rep.n(), rep.d());
    let words = rep.basis_words()?;
    let mut report = Report::new("support laws", &params(rep).iter().map(|(k, v)| (*k, v.clone())).collect::<Vec<_>>());
    let eval_word = |ops: &[Op], w: &TensorBasisWord| rep.eval(&OpExpr::word(ops), &TensorVector::basis(d, w.clone()));

    let mut failures = Vec::new();
    let mut total = 0;
    for w in &words {
        let b = w.support();
        if b.is_empty() {
            continue;
        }
        total += 1;
        let y = eval_word(&t_bar(rep, &b), w);
        let tail: Vec<usize> = (n - b.len() + 1..=n).collect();
        if y.is_zero() || y.supports() != vec![tail] {
            failures.push(format!("T-bar on {w} gives {y}"));
        }
    }
    report.push(Check::from_failures("T-bar_B moves support B to the tail", "supp x = B => T-bar_B x != 0 with support [n-r+1, n]", total, failures));

    let mut failures = Vec::new();
    for w in &words {
        let r = w.support().len();
        let y = eval_word(&vec![Op::N; n - r], w);
        let tail: Vec<usize> = (n - r + 1..=n).collect();
        let head: Vec<usize> = (1..=r).collect();
        let ok = if w.support() == tail { !y.is_zero() && y.supports() == vec![head] } else { y.is_zero() };
        if !ok {
            failures.push(format!("N^{} on {w} gives {y}", n - r));
        }
    }
    report.push(Check::from_failures(
        "N^(n-r) detects the tail",
        "N^(n-r) y != 0 iff supp y = [n-r+1, n], and then supp = [r]",
        words.len(),
        failures,
    ));

    let mut failures = Vec::new();
    let mut total = 0;
    for w in &words {
        let r = w.support().len();
        let lowers: Vec<u8> = w.0.iter().filter_map(|l| if let Letter::V { i, .. } = l { Some(*i) } else { None }).collect();
        if r == 0 || w.support() != (1..=r).collect::<Vec<_>>() || lowers.windows(2).any(|p| p[0] <= p[1]) {
            continue;
        }
        for omega in perm::all(r) {
            total += 1;
            let y = eval_word(&rep.t_word(&perm::reduced_word(&omega)), w);
            let mut permuted = w.clone();
            for p in 1..=r {
                permuted.0[p - 1] = w.0[omega[p - 1] - 1];
            }
            let single = y.len() == 1 && y.terms().next().map(|(v, c)| v == &permuted && c.is_unit()).unwrap_or(false);
            if !single {
                failures.push(format!("T_w, w = {omega:?}, on {w} gives {y}"));
            }
        }
    }
    report.push(Check::from_failures(
        "T_w permutes decreasing words",
        "supp z = [r], decreasing lower indices => T_w z = unit * (z permuted by w)",
        total,
        failures,
    ));
    Ok(report)
}

/// Every reduced word of a permutation.
pub fn reduced_words(p: &[usize]) -> Vec<Vec<usize>> {
    let len = perm::length(p);
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..p.len() {
        // p = s_k p' with l(p') = l(p) - 1 when k is a left descent
        let q: Vec<usize> = perm::compose(&perm::from_word(p.len(), &[k]), p);
        if perm::length(&q) + 1 == len {
            for mut w in reduced_words(&q) {
                w.insert(0, k);
                out.push(w);
            }
        }
    }
    out
}

/// T_w does not depend on the reduced word chosen for w in S_n.
pub fn verify_matsumoto(rep: &TensorRep) -> Result<Check> {
    let words = rep.basis_words()?;
    let mut failures = Vec::new();
    let mut total = 0;
    for p in perm::all(rep.n()) {
        let all = reduced_words(&p);
        let base = OpExpr::word(&rep.t_word(&all[0]));
        for other in &all[1..] {
            total += 1;
            let r = rel(format!("{:?} vs {other:?}", all[0]), base.clone(), OpExpr::word(&rep.t_word(other)));
            if let Some(f) = first_counterexample(rep, &words, &r) {
                failures.push(f);
            }
        }
    }
    Ok(Check::from_failures("reduced word independence", "T_w is the same for every reduced word of w", total, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_of_s3() {
        let w0 = vec![3, 2, 1];
        let mut all = reduced_words(&w0);
        all.sort();
        assert_eq!(all, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        for w in &all {
            assert_eq!(perm::from_word(3, w), w0);
        }
        assert_eq!(reduced_words(&[1, 2, 3]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn explicit_mode_satisfies_everything_n2() {
        for d in [2, 3] {
            let rep = TensorRep::new(2, d, EMode::Explicit).unwrap();
            let r = verify_ry_relations(&rep).unwrap();
            let bad: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
            assert_eq!(bad, vec!["E_i as framing average"], "{r}");
            let a = verify_alternative_presentations(&rep).unwrap();
            assert!(a.passed(), "{a}");
        }
    }

    #[test]
    fn averaged_mode_breaks_quadratic_and_inverse() {
        let rep = TensorRep::new(2, 2, EMode::Averaged).unwrap();
        let r = verify_ry_relations(&rep).unwrap();
        for name in ["quadratic", "inverse", "E_i as framing average"] {
            assert!(!r.check(name).unwrap().passed(), "{name}");
        }
        for name in ["braid", "framing order", "framing transport", "framing through N", "N absorbs T", "N shifts T", "reduced N relations"] {
            assert!(r.check(name).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn support_laws_and_matsumoto_n3() {
        let rep = TensorRep::new(3, 3, EMode::Averaged).unwrap();
        let r = verify_support_laws(&rep).unwrap();
        assert!(r.passed(), "{r}");
        assert!(verify_matsumoto(&rep).unwrap().passed());
    }

    #[test]
    fn t_a_and_t_bar_words() {
        let rep = TensorRep::new(4, 2, EMode::Averaged).unwrap();
        // T_{3,1} T_{4,2}
        assert_eq!(t_a(&rep, &[3, 4]), vec![Op::T(2), Op::T(1), Op::T(3), Op::T(2)]);
        // n - r = 2: T_{3,1} T_{4,3}
        assert_eq!(t_bar(&rep, &[1, 3]), vec![Op::T(2), Op::T(1), Op::T(3)]);
        assert!(t_bar(&rep, &[1, 2, 3, 4]).is_empty());
    }
}
