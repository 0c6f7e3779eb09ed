//! The spanning set C_n = { T_A F_m T_w N^(n-r) T-bar_B } on tensor space:
//! its coefficient matrix, rank certificates at rational points t = t0, and
//! closure of its span under right multiplication by the generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::relations::{t_a, t_bar};
use super::{Op, OpExpr, TensorBasisWord, TensorRep, TensorVector};
use crate::error::{guard, Error, Result};
use crate::perm;
use crate::report::Check;
use crate::ring::{is_prime, CycloLaurent, CycloRational, FieldElem, ModP, Rational, SparseEchelon, SparseVec};

/// Refuse coefficient matrices with more rows than this.
pub const CN_LIMIT: u128 = 5_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CnIndex {
    pub r: usize,
    pub a: Vec<usize>,
    pub m: Vec<u32>,
    /// Image word of w in S_r.
    pub omega: Vec<usize>,
    pub b: Vec<usize>,
}

fn set_text(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for CnIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            return f.write_str("N^n");
        }
        let m: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        let w: Vec<String> = self.omega.iter().map(|x| x.to_string()).collect();
        write!(f, "A={} m=({}) w=[{}] B={}", set_text(&self.a), m.join(","), w.join(""), set_text(&self.b))
    }
}

/// |C_n| = sum_r d^r C(n,r)^2 r!
pub fn cn_size(n: usize, d: u32) -> u128 {
    (0..=n as u128)
        .map(|r| (d as u128).pow(r as u32) * perm::binomial(n as u128, r).pow(2) * perm::factorial(r))
        .sum()
}

pub fn enumerate_cn(n: usize, d: u32) -> Result<Vec<CnIndex>> {
    guard("C_n size", cn_size(n, d), CN_LIMIT)?;
    let mut out = vec![CnIndex { r: 0, a: vec![], m: vec![], omega: vec![], b: vec![] }];
    for r in 1..=n {
        let framings: Vec<Vec<u32>> = (0..(d as usize).pow(r as u32))
            .map(|mut c| {
                (0..r)
                    .map(|_| {
                        let v = (c % d as usize) as u32;
                        c /= d as usize;
                        v
                    })
                    .collect::<Vec<u32>>()
                    .into_iter()
                    .rev()
                    .collect()
            })
            .collect();
        for a in perm::subsets(n, r) {
            for m in &framings {
                for omega in perm::all(r) {
                    for b in perm::subsets(n, r) {
                        out.push(CnIndex { r, a: a.clone(), m: m.clone(), omega: omega.clone(), b });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The operator word of a C_n element, leftmost factor first.
pub fn cn_word(rep: &TensorRep, x: &CnIndex) -> Vec<Op> {
    let n = rep.n();
    if x.r == 0 {
        return vec![Op::N; n];
    }
    let mut w = t_a(rep, &x.a);
    w.extend(x.m.iter().enumerate().filter(|(_, &k)| k != 0).map(|(j, &k)| Op::F(j + 1, k)));
    w.extend(rep.t_word(&perm::reduced_word(&x.omega)));
    w.extend(std::iter::repeat(Op::N).take(n - x.r));
    w.extend(t_bar(rep, &x.b));
    w
}

/// Rows are operators rho(X); column in * W + out holds the coefficient of
/// basis word `out` in rho(X)(`in`).
pub struct CnMatrix {
    pub n: usize,
    pub d: u32,
    pub index: Vec<CnIndex>,
    pub words: Vec<TensorBasisWord>,
    pub rows: Vec<SparseVec<CycloLaurent>>,
}

pub fn operator_row(
    rep: &TensorRep,
    ops: &[Op],
    words: &[TensorBasisWord],
    pos: &HashMap<TensorBasisWord, usize>,
) -> SparseVec<CycloLaurent> {
    let e = OpExpr::word(ops);
    let w_count = words.len();
    let mut row = BTreeMap::new();
    for (k, w) in words.iter().enumerate() {
        let y = rep.eval(&e, &TensorVector::basis(rep.d(), w.clone()));
        for (out, c) in y.terms() {
            row.insert(k * w_count + pos[out], c.clone());
        }
    }
    row
}

pub fn cn_matrix(rep: &TensorRep) -> Result<CnMatrix> {
    let (n, d) = (rep.n(), rep.d());
    let index = enumerate_cn(n, d)?;
    let words = rep.basis_words()?;
    let pos: HashMap<TensorBasisWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let rows = index.par_iter().map(|x| operator_row(rep, &cn_word(rep, x), &words, &pos)).collect();
    Ok(CnMatrix { n, d, index, words, rows })
}

pub fn specialize_row(row: &SparseVec<CycloLaurent>, t0: &Rational) -> Result<SparseVec<CycloRational>> {
    let mut out = BTreeMap::new();
    for (&c, v) in row {
        let x = v.specialize(t0)?;
        if !x.is_zero() {
            out.insert(c, x);
        }
    }
    Ok(out)
}

/// A prime p = 1 mod d with a chosen primitive d-th root of unity mod p;
/// reducing Z[xi] at (p, xi -> root) is a ring map, so ranks can only drop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularField {
    pub p: u64,
    pub root: u64,
}

impl ModularField {
    pub fn new(d: u32) -> Self {
        let mut p = 2_000_000_000u64 + 1;
        while !(p % d as u64 == 1 && is_prime(p as u32)) {
            p += 2;
        }
        let e = (p - 1) / d as u64;
        let root = (2..p)
            .map(|x| ModP::new(x as i128, p).pow(e))
            .find(|w| (1..d as u64).all(|k| w.pow(k).v != 1))
            .expect("F_p^x is cyclic")
            .v;
        ModularField { p, root }
    }

    pub fn rational(&self, r: &Rational) -> Result<ModP> {
        let p = BigInt::from(self.p);
        let num = r.numer().mod_floor(&p).to_u64().expect("reduced residue");
        let den = r.denom().mod_floor(&p).to_u64().expect("reduced residue");
        let den = ModP { v: den, p: self.p }.inv().ok_or(Error::NotAUnit)?;
        Ok(FieldElem::mul(&ModP { v: num, p: self.p }, &den))
    }

    pub fn cyclo(&self, c: &CycloRational) -> Result<ModP> {
        let root = ModP { v: self.root, p: self.p };
        let mut acc = ModP { v: 0, p: self.p };
        for (k, x) in c.coeffs().iter().enumerate() {
            if !Zero::is_zero(x) {
                acc = acc.add(&self.rational(x)?.mul(&root.pow(k as u64)));
            }
        }
        Ok(acc)
    }

    pub fn row(&self, row: &SparseVec<CycloRational>) -> Result<SparseVec<ModP>> {
        let mut out = BTreeMap::new();
        for (&c, v) in row {
            let x = self.cyclo(v)?;
            if !x.is_zero() {
                out.insert(c, x);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    /// Elimination over Q(xi_d).
    Exact,
    /// Elimination modulo a prime; a lower bound for the rank over Q(xi_d).
    Modular,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub n: usize,
    pub d: u32,
    pub cn_size: u128,
    pub points: Vec<String>,
    pub ranks: Vec<usize>,
    pub method: RankMethod,
    pub prime: Option<u64>,
}

impl RankCertificate {
    pub fn full_rank(&self) -> bool {
        self.ranks.iter().all(|&r| r as u128 == self.cn_size)
    }
}

/// Exact when |C_n| is small, modular otherwise.
pub fn default_method(n: usize, d: u32) -> RankMethod {
    if cn_size(n, d) <= 64 {
        RankMethod::Exact
    } else {
        RankMethod::Modular
    }
}

pub fn rank_at(m: &CnMatrix, t0: &Rational, method: RankMethod) -> Result<usize> {
    let rows: Vec<SparseVec<CycloRational>> = m.rows.par_iter().map(|r| specialize_row(r, t0)).collect::<Result<_>>()?;
    Ok(match method {
        RankMethod::Exact => crate::ring::rank_of(rows),
        RankMethod::Modular => {
            let f = ModularField::new(m.d);
            let rows: Vec<SparseVec<ModP>> = rows.iter().map(|r| f.row(r)).collect::<Result<_>>()?;
            crate::ring::rank_of(rows)
        }
    })
}

pub fn rank_certificate(m: &CnMatrix, points: &[Rational], method: RankMethod) -> Result<RankCertificate> {
    let ranks = points.iter().map(|t0| rank_at(m, t0, method)).collect::<Result<Vec<_>>>()?;
    Ok(RankCertificate {
        n: m.n,
        d: m.d,
        cn_size: cn_size(m.n, m.d),
        points: points.iter().map(|t| t.to_string()).collect(),
        ranks,
        method,
        prime: (method == RankMethod::Modular).then(|| ModularField::new(m.d).p),
    })
}

pub fn certificate_check(c: &RankCertificate) -> Check {
    let pts: Vec<String> = c.points.iter().zip(&c.ranks).map(|(t, r)| format!("rank {r} at t = {t}")).collect();
    let mut detail = format!("|C_n| = {}; {}", c.cn_size, pts.join(", "));
    if let Some(p) = c.prime {
        detail.push_str(&format!(" (mod {p}, a lower bound)"));
    }
    if (c.d as usize) < c.n {
        detail.push_str("; d < n, no faithfulness claim");
    }
    Check::new(
        format!("C_n rank (n={}, d={})", c.n, c.d),
        "rank rho(C_n) = |C_n| = sum_r d^r C(n,r)^2 r!",
        c.full_rank(),
        detail,
    )
}

/// rho(X g) lies in the span of rho(C_n) for every X in C_n (or a seeded
/// sample) and every generator g, with exactly zero residual at t = t0.
pub fn spanning_closure(rep: &TensorRep, m: &CnMatrix, t0: &Rational, sample: Option<(usize, u64)>) -> Result<Check> {
    let n = rep.n();
    let pos: HashMap<TensorBasisWord, usize> = m.words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ech: SparseEchelon<CycloRational> = SparseEchelon::new(false);
    for r in &m.rows {
        ech.insert(specialize_row(r, t0)?);
    }
    let mut gens: Vec<Op> = (1..n).map(Op::T).collect();
    gens.extend((1..=n).map(|i| Op::F(i, 1)));
    gens.push(Op::N);
    let mut pairs: Vec<(usize, Op)> = (0..m.index.len()).flat_map(|i| gens.iter().map(move |g| (i, g.clone()))).collect();
    if let Some((k, seed)) = sample {
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pairs.truncate(k);
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(i, g)| {
            let mut w = cn_word(rep, &m.index[*i]);
            w.push(g.clone());
            let row = specialize_row(&operator_row(rep, &w, &m.words, &pos), t0).ok()?;
            let (res, _) = ech.reduce(row);
            (!res.is_empty()).then(|| format!("{} * {g:?} leaves a residual of {} entries", m.index[*i], res.len()))
        })
        .collect();
    Ok(Check::from_failures(
        format!("C_n span closed under generators (n={}, d={})", m.n, m.d),
        "X g lies in span C_n for X in C_n, g in {T_i, F_i, N}",
        pairs.len(),
        failures,
    ))
}
