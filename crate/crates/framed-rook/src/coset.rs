//! Double cosets U sigma U of the upper unitriangular group in M_n(F_q).

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{guard, Result};
use crate::report::{Check, Report};
use crate::ring::PrimeField;
use crate::rook::{canon, h_matrix, inversion_sets, s_matrix, CanonicalQ, RookMatrix};

pub const UNIPOTENT_LIMIT: u128 = 100_000;
pub const MATRIX_LIMIT: u128 = 5_000_000;
/// Coset element sets are only materialized below this size.
pub const COSET_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct UnipotentGroup {
    n: usize,
    q: u32,
    elements: Vec<RookMatrix>,
}

impl UnipotentGroup {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        PrimeField::new(q)?;
        let slots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let size = (q as u128).pow(slots.len() as u32);
        guard("unipotent group", size, UNIPOTENT_LIMIT)?;
        let mut elements = Vec::with_capacity(size as usize);
        for mut code in 0..size as u64 {
            let mut m = RookMatrix::identity(n, q);
            for &(i, j) in &slots {
                m.set(i, j, (code % q as u64) as i64);
                code /= q as u64;
            }
            elements.push(m);
        }
        Ok(UnipotentGroup { n, q, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn elements(&self) -> &[RookMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Literal set U m U.
    pub fn double_coset(&self, m: &RookMatrix) -> Result<HashSet<RookMatrix>> {
        guard("double coset materialization", (self.len() as u128).pow(2), COSET_LIMIT * 4)?;
        let left: Vec<RookMatrix> = self.elements.iter().map(|u| u.mul(m)).collect();
        let mut out = HashSet::new();
        for x in &left {
            for v in &self.elements {
                out.insert(x.mul(v));
            }
        }
        Ok(out)
    }
}

/// sigma = u1 m u2 with sigma in Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub sigma: CanonicalQ,
    pub u1: RookMatrix,
    pub u2: RookMatrix,
}

/// Columns left to right; pivot on the bottom-most nonzero entry in an
/// unused row, clear above it with row operations and to its right with
/// column operations.
pub fn reduce_to_representative(m: &RookMatrix) -> Reduction {
    let (n, q) = (m.n(), m.q());
    let mut a = m.clone();
    let mut u1 = RookMatrix::identity(n, q);
    let mut u2 = RookMatrix::identity(n, q);
    let mut used = vec![false; n + 1];
    for c in 1..=n {
        let Some(p) = (1..=n).rev().find(|&i| !used[i] && a.get(i, c) != 0) else { continue };
        used[p] = true;
        let inv = a.entry(p, c).inv().expect("pivot is nonzero");
        for i in 1..p {
            let e = a.entry(i, c);
            if e.is_zero() {
                continue;
            }
            // row_i -= (e / pivot) row_p
            let f = -(e * inv);
            for j in 1..=n {
                let v = a.entry(i, j) + f * a.entry(p, j);
                a.set(i, j, v.residue() as i64);
                let w = u1.entry(i, j) + f * u1.entry(p, j);
                u1.set(i, j, w.residue() as i64);
            }
        }
        for j in c + 1..=n {
            let e = a.entry(p, j);
            if e.is_zero() {
                continue;
            }
            // col_j -= (e / pivot) col_c
            let f = -(e * inv);
            for i in 1..=n {
                let v = a.entry(i, j) + f * a.entry(i, c);
                a.set(i, j, v.residue() as i64);
                let w = u2.entry(i, j) + f * u2.entry(i, c);
                u2.set(i, j, w.residue() as i64);
            }
        }
    }
    Reduction { sigma: canon(&a), u1, u2 }
}

pub fn representative(m: &RookMatrix) -> CanonicalQ {
    reduce_to_representative(m).sigma
}

/// |U sigma U| = q^{r(r-1)/2 + l(sigma)}.
pub fn coset_size(s: &CanonicalQ) -> u128 {
    (s.q() as u128).pow((s.rank * s.rank.saturating_sub(1) / 2 + s.length) as u32)
}

/// Literal elements of U sigma U, refused above `COSET_LIMIT`.
pub fn coset_elements(u: &UnipotentGroup, s: &CanonicalQ) -> Result<HashSet<RookMatrix>> {
    guard("coset size", coset_size(s), COSET_LIMIT)?;
    u.double_coset(&s.matrix)
}

/// Representative of every matrix in M_n(F_q), indexed by `RookMatrix::code`.
pub struct RepresentativeTable {
    n: usize,
    q: u32,
    reps: Vec<CanonicalQ>,
    index: Vec<u32>,
}

impl RepresentativeTable {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        PrimeField::new(q)?;
        let total = (q as u128).pow((n * n) as u32);
        guard("matrix scan", total, MATRIX_LIMIT)?;
        let mut reps: Vec<CanonicalQ> = crate::rook::enumerate_q(n, q)?;
        reps.sort();
        let pos: HashMap<RookMatrix, u32> = reps.iter().enumerate().map(|(i, s)| (s.matrix.clone(), i as u32)).collect();
        let index: Vec<u32> = (0..total as u64)
            .map(|c| pos[&representative(&RookMatrix::from_code(n, q, c)).matrix])
            .collect();
        Ok(RepresentativeTable { n, q, reps, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reps(&self) -> &[CanonicalQ] {
        &self.reps
    }

    pub fn rep_index(&self, m: &RookMatrix) -> usize {
        self.index[m.code() as usize] as usize
    }

    pub fn index_of(&self, s: &CanonicalQ) -> usize {
        self.rep_index(&s.matrix)
    }

    pub fn rep_of(&self, m: &RookMatrix) -> &CanonicalQ {
        &self.reps[self.rep_index(m)]
    }

    /// Literal size of every double coset, by counting the whole matrix monoid.
    pub fn literal_sizes(&self) -> Vec<u128> {
        let mut sizes = vec![0u128; self.reps.len()];
        for &i in &self.index {
            sizes[i as usize] += 1;
        }
        sizes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairClass {
    /// (k, k+1) in I_{0,0}
    BothEmpty,
    /// (k, k+1) in I_{1,0} or in I_{1,1} minus inv
    Ascent,
    /// (k, k+1) in I_{0,1} or in inv
    Descent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LengthCase {
    Same,
    Up,
    Down,
}

#[derive(Clone, Debug)]
pub struct SimpleProduct {
    pub class: PairClass,
    pub length_case: LengthCase,
    /// Representatives of the cosets making up U s_k U . U sigma U, sorted and distinct.
    pub reps: Vec<CanonicalQ>,
}

pub fn classify(k: usize, s: &CanonicalQ) -> PairClass {
    let sets = inversion_sets(s);
    let p = (k, k + 1);
    if sets.i[0][0].contains(&p) {
        PairClass::BothEmpty
    } else if sets.i[1][0].contains(&p) || (sets.i[1][1].contains(&p) && !sets.inv.contains(&p)) {
        PairClass::Ascent
    } else {
        PairClass::Descent
    }
}

pub fn length_case(k: usize, s: &CanonicalQ) -> Result<LengthCase> {
    let t = canon(&s_matrix(s.n(), s.q(), k)?.mul(&s.matrix));
    Ok(match t.length as i64 - s.length as i64 {
        0 => LengthCase::Same,
        1 => LengthCase::Up,
        -1 => LengthCase::Down,
        d => unreachable!("simple reflection changed length by {d}"),
    })
}

/// U s_k U . U sigma U by the three-case rule.
pub fn simple_coset_product(k: usize, s: &CanonicalQ) -> Result<SimpleProduct> {
    let (n, q) = (s.n(), s.q());
    let class = classify(k, s);
    let sk = canon(&s_matrix(n, q, k)?.mul(&s.matrix));
    let mut reps: BTreeSet<CanonicalQ> = BTreeSet::new();
    match class {
        PairClass::BothEmpty => {
            reps.insert(s.clone());
        }
        PairClass::Ascent => {
            reps.insert(sk);
        }
        PairClass::Descent => {
            reps.insert(sk);
            for r in PrimeField::new(q)?.units() {
                reps.insert(canon(&h_matrix(n, q, k, r)?.mul(&s.matrix)));
            }
        }
    }
    Ok(SimpleProduct { class, length_case: length_case(k, s)?, reps: reps.into_iter().collect() })
}

/// Representatives hit by the literal set product X Y.
pub fn literal_product_reps(
    table: &RepresentativeTable,
    x: &HashSet<RookMatrix>,
    y: &HashSet<RookMatrix>,
) -> Vec<CanonicalQ> {
    let mut hit = vec![false; table.reps().len()];
    for a in x {
        for b in y {
            hit[table.rep_index(&a.mul(b))] = true;
        }
    }
    table.reps().iter().zip(hit).filter(|(_, h)| *h).map(|(s, _)| s.clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// U t U . U sigma U = U t sigma U, or on the right U sigma t U.
pub fn torus_coset_product(t: &RookMatrix, s: &CanonicalQ, side: Side) -> CanonicalQ {
    match side {
        Side::Left => canon(&t.mul(&s.matrix)),
        Side::Right => canon(&s.matrix.mul(t)),
    }
}

/// t^sigma = sum_i t_{i,i} E_{i hat, i hat}, so that t sigma = sigma t^sigma.
pub fn torus_conjugate(t: &RookMatrix, s: &CanonicalQ) -> RookMatrix {
    let mut out = RookMatrix::identity(s.n(), s.q());
    for i in 1..=s.n() {
        out.set(s.hat[i - 1], s.hat[i - 1], t.get(i, i) as i64);
    }
    out
}

/// All invertible diagonal matrices.
pub fn torus(n: usize, q: u32) -> Vec<RookMatrix> {
    let units = (q - 1) as usize;
    (0..units.pow(n as u32))
        .map(|mut c| {
            let d: Vec<i64> = (0..n)
                .map(|_| {
                    let v = (c % units) as i64 + 1;
                    c /= units;
                    v
                })
                .collect();
            RookMatrix::diag(q, &d)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetRecord {
    pub representative: String,
    pub rank: usize,
    pub length: usize,
    pub size: String,
    pub literal_size: Option<String>,
    pub verified: bool,
}

/// Per-representative sizes against the formula plus the partition check.
pub fn coset_report(n: usize, q: u32) -> Result<(Vec<CosetRecord>, Report)> {
    let table = RepresentativeTable::new(n, q)?;
    let literal = table.literal_sizes();
    let mut records = Vec::new();
    let mut bad = Vec::new();
    let mut formula_sum = 0u128;
    for (s, &lit) in table.reps().iter().zip(&literal) {
        let size = coset_size(s);
        formula_sum += size;
        if size != lit {
            bad.push(format!("{s}: formula {size}, literal {lit}"));
        }
        records.push(CosetRecord {
            representative: s.to_text(),
            rank: s.rank,
            length: s.length,
            size: size.to_string(),
            literal_size: Some(lit.to_string()),
            verified: size == lit,
        });
    }
    let total = (q as u128).pow((n * n) as u32);
    let mut rep = Report::new("coset-report", &[("n", n.to_string()), ("q", q.to_string())]);
    rep.push(Check::from_failures("coset sizes", "|U sigma U| = q^(r(r-1)/2 + l(sigma))", literal.len(), bad));
    rep.push(Check::new(
        "cosets partition M",
        "M = disjoint union of U sigma U over Q",
        formula_sum == total && literal.iter().sum::<u128>() == total,
        format!("sum of sizes {formula_sum}, q^(n^2) = {total}"),
    ));
    Ok((records, rep))
}

fn sample<T>(mut items: Vec<T>, samples: Option<(usize, u64)>) -> Vec<T> {
    if let Some((k, seed)) = samples {
        items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        items.truncate(k);
    }
    items
}

/// |U sigma U| by literal enumeration of u sigma u' against the size formula,
/// on every representative or a seeded sample.
pub fn verify_literal_cosets(n: usize, q: u32, samples: Option<(usize, u64)>) -> Result<Check> {
    let u = UnipotentGroup::new(n, q)?;
    let reps = sample(crate::rook::enumerate_q(n, q)?, samples);
    let failures: Vec<String> = reps
        .par_iter()
        .map(|s| -> Result<Option<String>> {
            let lit = coset_elements(&u, s)?.len() as u128;
            Ok((lit != coset_size(s)).then(|| format!("{s}: literal {lit}, formula {}", coset_size(s))))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Check::from_failures(
        format!("literal coset sizes (n={n}, q={q})"),
        "|{u sigma u' : u, u' in U}| = q^(r(r-1)/2 + l(sigma))",
        reps.len(),
        failures,
    ))
}

/// The three-case rule for U s_k U . U sigma U and its length form against
/// the literal set product, over all (k, sigma) or a seeded sample.
pub fn verify_product_law(n: usize, q: u32, samples: Option<(usize, u64)>) -> Result<[Check; 2]> {
    let u = UnipotentGroup::new(n, q)?;
    let table = RepresentativeTable::new(n, q)?;
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|k| (0..table.reps().len()).map(move |i| (k, i))).collect();
    let pairs = sample(pairs, samples);
    let simple: Vec<HashSet<RookMatrix>> =
        (1..n).map(|k| u.double_coset(&s_matrix(n, q, k)?)).collect::<Result<_>>()?;
    let results: Vec<(Option<String>, Option<String>)> = pairs
        .par_iter()
        .map(|&(k, i)| -> Result<_> {
            let s = &table.reps()[i];
            let got = simple_coset_product(k, s)?;
            let lit = literal_product_reps(&table, &simple[k - 1], &u.double_coset(&s.matrix)?);
            let expect = match got.class {
                PairClass::BothEmpty => LengthCase::Same,
                PairClass::Ascent => LengthCase::Up,
                PairClass::Descent => LengthCase::Down,
            };
            let show = |v: &[CanonicalQ]| v.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(" | ");
            Ok((
                (got.reps != lit).then(|| format!("k={k}, {s}: rule [{}], literal [{}]", show(&got.reps), show(&lit))),
                (got.length_case != expect)
                    .then(|| format!("k={k}, {s}: class {:?} but length {:?}", got.class, got.length_case)),
            ))
        })
        .collect::<Result<_>>()?;
    let (a, b): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok([
        Check::from_failures(
            format!("simple coset products (n={n}, q={q})"),
            "Us_kU.UsU = UsU | Us_ksU | Us_ksU + sum_r Uh_k(r)sU by the class of (k,k+1)",
            pairs.len(),
            a.into_iter().flatten().collect(),
        ),
        Check::from_failures(
            format!("product cases by length (n={n}, q={q})"),
            "l(s_k sigma) - l(sigma) = 0, +1, -1 in the three cases",
            pairs.len(),
            b.into_iter().flatten().collect(),
        ),
    ])
}

/// Literal set powers of UtU over the torus: the first check compares
/// (UtU)^(q-1) with U, the second compares (UtU)^m with U at m = q.
pub fn verify_torus_powers(n: usize, q: u32) -> Result<[Check; 2]> {
    let u = UnipotentGroup::new(n, q)?;
    let unit: HashSet<RookMatrix> = u.elements().iter().cloned().collect();
    let tori = torus(n, q);
    let results: Vec<(bool, bool)> = tori
        .par_iter()
        .map(|t| -> Result<(bool, bool)> {
            let utu = u.double_coset(t)?;
            let mut pow = utu.clone();
            let mut at_q_minus_1 = q == 2 && pow == unit;
            for m in 2..=q {
                pow = pow.iter().flat_map(|a| utu.iter().map(move |b| a.mul(b))).collect();
                if m == q - 1 {
                    at_q_minus_1 = pow == unit;
                }
            }
            Ok((at_q_minus_1, pow == unit))
        })
        .collect::<Result<_>>()?;
    let fails = |pick: fn(&(bool, bool)) -> bool| -> Vec<String> {
        tori.iter().zip(&results).filter(|(_, r)| !pick(r)).map(|(t, _)| format!("t = {t}")).collect()
    };
    Ok([
        Check::from_failures(
            format!("torus cosets of order q-1 (n={n}, q={q})"),
            "(UtU)^(q-1) = U",
            tori.len(),
            fails(|r| r.0),
        ),
        Check::from_failures(
            format!("torus cosets at m = q (n={n}, q={q})"),
            "(UtU)^m = U for m a power of q",
            tori.len(),
            fails(|r| r.1),
        ),
    ])
}
