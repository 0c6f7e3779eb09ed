//! The convolution algebra H(M, U) spanned by the normalized double coset
//! sums T_sigma = q^{r(1-r)/2} [sigma], with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coset::{RepresentativeTable, Side};
use crate::error::{Error, Result};
use crate::framed::Gen;
use crate::report::{Check, Report};
use crate::ring::{PrimeField, Rational};
use crate::rook::{a_matrix, bruhat_factor, canon, h_matrix, hs_matrix, nu_matrix, s_matrix, CanonicalQ, RookMatrix};

/// q^e for a possibly negative exponent.
pub fn q_pow(q: u32, e: i64) -> Rational {
    let base = Rational::from_integer(q.into());
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// r(1 - r)/2, the normalizing exponent of a rank-r basis element.
pub fn a_exp(r: usize) -> i64 {
    let r = r as i64;
    r * (1 - r) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    q: u32,
    coeffs: BTreeMap<CanonicalQ, Rational>,
}

impl HeckeElement {
    pub fn zero(n: usize, q: u32) -> Self {
        HeckeElement { n, q, coeffs: BTreeMap::new() }
    }

    /// T_1.
    pub fn one(n: usize, q: u32) -> Self {
        Self::basis(canon(&RookMatrix::identity(n, q)))
    }

    pub fn basis(s: CanonicalQ) -> Self {
        let mut x = Self::zero(s.n(), s.q());
        x.add_term(s, Rational::one());
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalQ, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, s: &CanonicalQ) -> Rational {
        self.coeffs.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, s: CanonicalQ, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.q);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(s, v)| (s.clone(), v * c)).collect();
        }
        out
    }

    /// The augmentation sending every monoid element to 1, so T_sigma -> q^l(sigma).
    pub fn pi(&self) -> Rational {
        self.coeffs.iter().map(|(s, c)| c * q_pow(self.q, s.length as i64)).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (s, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "T[{s}]")?;
        }
        Ok(())
    }
}

/// Generators of H(M, U): T_k = T_{s_k}, the torus elements T_t, and N = T_nu.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HGen {
    T(usize),
    /// F_i = T_{a_i}.
    F(usize),
    Torus(RookMatrix),
    N,
}

impl fmt::Display for HGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HGen::T(k) => write!(f, "T{k}"),
            HGen::F(i) => write!(f, "F{i}"),
            HGen::Torus(t) => write!(f, "F[{}]", t.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")),
            HGen::N => f.write_str("N"),
        }
    }
}

fn check_index(k: usize, bound: usize, n: usize) -> Result<()> {
    if k == 0 || k > bound {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(())
}

/// g * T_sigma (Left) or T_sigma * g (Right), by the multiplication rules.
fn gen_times_basis(g: &HGen, s: &CanonicalQ, side: Side) -> Result<HeckeElement> {
    let (n, q) = (s.n(), s.q());
    let times = |m: &RookMatrix| match side {
        Side::Left => canon(&m.mul(&s.matrix)),
        Side::Right => canon(&s.matrix.mul(m)),
    };
    let mut out = HeckeElement::zero(n, q);
    match g {
        HGen::T(k) => {
            check_index(*k, n.saturating_sub(1), n)?;
            let sk = times(&s_matrix(n, q, *k)?);
            match sk.length as i64 - s.length as i64 {
                0 => out.add_term(s.clone(), rat(q as i64)),
                1 => out.add_term(sk, Rational::one()),
                -1 => {
                    out.add_term(sk, rat(q as i64));
                    for r in PrimeField::new(q)?.units() {
                        let h = match side {
                            Side::Left => h_matrix(n, q, *k, r)?,
                            Side::Right => hs_matrix(n, q, *k, r)?,
                        };
                        out.add_term(times(&h), Rational::one());
                    }
                }
                d => unreachable!("simple reflection changed length by {d}"),
            }
        }
        HGen::F(i) => {
            check_index(*i, n, n)?;
            out.add_term(times(&a_matrix(n, q, *i, 1)?), Rational::one());
        }
        HGen::Torus(t) => {
            if !t.is_invertible_diagonal() || t.n() != n {
                return Err(Error::Parse(format!("{t} is not an invertible diagonal matrix of size {n}")));
            }
            out.add_term(times(t), Rational::one());
        }
        HGen::N => {
            let ns = times(&nu_matrix(n, q));
            let e = s.length as i64 - ns.length as i64;
            out.add_term(ns, q_pow(q, e));
        }
    }
    Ok(out)
}

pub fn multiply_by_generator(g: &HGen, x: &HeckeElement, side: Side) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(x.n, x.q);
    for (s, c) in &x.coeffs {
        out = out.add(&gen_times_basis(g, s, side)?.scale(c));
    }
    Ok(out)
}

/// g_1 g_2 ... g_k * x.
pub fn apply_word(word: &[HGen], x: &HeckeElement) -> Result<HeckeElement> {
    let mut y = x.clone();
    for g in word.iter().rev() {
        y = multiply_by_generator(g, &y, Side::Left)?;
    }
    Ok(y)
}

/// A generator word whose product is T_sigma: sigma = u f nu^k w with
/// l(sigma) = l(u) + l(w).
pub fn basis_word(s: &CanonicalQ) -> Vec<HGen> {
    bruhat_factor(s)
        .to_word()
        .into_iter()
        .map(|g| match g {
            Gen::S(k) => HGen::T(k),
            Gen::A(i) => HGen::F(i),
            Gen::Nu => HGen::N,
            Gen::R(_) => unreachable!("normal form words carry no r_i"),
        })
        .collect()
}

pub fn general_product(x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    if x.q != y.q {
        return Err(Error::ModulusMismatch(x.q, y.q));
    }
    let mut out = HeckeElement::zero(x.n, x.q);
    for (s, c) in &x.coeffs {
        out = out.add(&apply_word(&basis_word(s), y)?.scale(c));
    }
    Ok(out)
}

/// Literal convolution [sigma][tau] in the monoid algebra of M_n(F_q),
/// read back in the T basis.
pub struct ConvolutionOracle {
    table: RepresentativeTable,
    cosets: Vec<Vec<RookMatrix>>,
}

impl ConvolutionOracle {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let table = RepresentativeTable::new(n, q)?;
        let total = (q as u64).pow((n * n) as u32);
        let mut cosets = vec![Vec::new(); table.reps().len()];
        for c in 0..total {
            let m = RookMatrix::from_code(n, q, c);
            cosets[table.rep_index(&m)].push(m);
        }
        Ok(ConvolutionOracle { table, cosets })
    }

    pub fn table(&self) -> &RepresentativeTable {
        &self.table
    }

    pub fn basis(&self) -> &[CanonicalQ] {
        self.table.reps()
    }

    pub fn coset(&self, s: &CanonicalQ) -> &[RookMatrix] {
        &self.cosets[self.table.index_of(s)]
    }

    pub fn product(&self, s: &CanonicalQ, t: &CanonicalQ) -> Result<HeckeElement> {
        let (n, q) = (self.table.n(), self.table.q());
        let total = (q as usize).pow((n * n) as u32);
        let ys = self.coset(t);
        let tally = self
            .coset(s)
            .par_iter()
            .fold(
                || vec![0u32; total],
                |mut acc, x| {
                    for y in ys {
                        acc[x.product_code(y) as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u32; total],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(u, v)| *u += v);
                    a
                },
            );
        let mut out = HeckeElement::zero(n, q);
        for (i, rho) in self.table.reps().iter().enumerate() {
            let c = tally[rho.matrix.code() as usize];
            if let Some(m) = self.cosets[i].iter().find(|m| tally[m.code() as usize] != c) {
                return Err(Error::BiInvariance(format!("[{s}][{t}] at {m} vs {rho}")));
            }
            if c > 0 {
                let e = a_exp(s.rank) + a_exp(t.rank) - a_exp(rho.rank);
                out.add_term(rho.clone(), Rational::from_integer(c.into()) * q_pow(q, e));
            }
        }
        Ok(out)
    }

    /// Bilinear extension of `product`.
    pub fn multiply(&self, x: &HeckeElement, y: &HeckeElement) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero(x.n, x.q);
        for (s, c) in &x.coeffs {
            for (t, d) in &y.coeffs {
                out = out.add(&self.product(s, t)?.scale(&(c * d)));
            }
        }
        Ok(out)
    }
}

/// The element T_g, as a product with the unit.
pub fn generator_element(g: &HGen, n: usize, q: u32) -> Result<HeckeElement> {
    multiply_by_generator(g, &HeckeElement::one(n, q), Side::Left)
}

/// All generators T_k, F_i, N of a given size.
pub fn generators(n: usize) -> Vec<HGen> {
    let mut g: Vec<HGen> = (1..n).map(HGen::T).collect();
    g.extend((1..=n).map(HGen::F));
    g.push(HGen::N);
    g
}

/// Compare generator rules (both sides) with the oracle on generator x basis
/// pairs; exhaustive when `samples` is None.
pub fn compare_generator_rules(oracle: &ConvolutionOracle, samples: Option<(usize, u64)>) -> Result<Check> {
    let (n, q) = (oracle.table.n(), oracle.table.q());
    let mut pairs: Vec<(HGen, CanonicalQ)> = generators(n)
        .into_iter()
        .flat_map(|g| oracle.basis().iter().map(move |s| (g.clone(), s.clone())))
        .collect();
    if let Some((k, seed)) = samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(k);
    }
    let mut failures = Vec::new();
    for (g, s) in &pairs {
        let ge = generator_element(g, n, q)?;
        let (gs, _) = ge.terms().next().expect("generator is a basis element");
        for side in [Side::Left, Side::Right] {
            let rule = gen_times_basis(g, s, side)?;
            let lit = match side {
                Side::Left => oracle.product(gs, s)?,
                Side::Right => oracle.product(s, gs)?,
            };
            if rule != lit {
                failures.push(format!("{g} {side:?} on T[{s}]: rule {rule}, oracle {lit}"));
            }
        }
    }
    Ok(Check::from_failures(
        "generator rules vs convolution",
        "T_k T_s, T_t T_s, N T_s and mirror images equal the literal double coset convolution",
        2 * pairs.len(),
        failures,
    ))
}

/// Basis products T_s T_t from the rules against the oracle, and
/// pi(T_s T_t) = q^(l(s) + l(t)) on every oracle product.
pub fn compare_products(oracle: &ConvolutionOracle, samples: Option<(usize, u64)>) -> Result<[Check; 2]> {
    let q = oracle.table.q();
    let basis = oracle.basis();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    if let Some((k, seed)) = samples {
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pairs.truncate(k);
    }
    let results: Vec<(Option<String>, Option<String>)> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<_> {
            let (s, t) = (&basis[i], &basis[j]);
            let lit = oracle.product(s, t)?;
            let rule = general_product(&HeckeElement::basis(s.clone()), &HeckeElement::basis(t.clone()))?;
            let expect = q_pow(q, (s.length + t.length) as i64);
            Ok((
                (rule != lit).then(|| format!("T[{s}] T[{t}]: rule {rule}, oracle {lit}")),
                (lit.pi() != expect).then(|| format!("pi(T[{s}] T[{t}]) = {}, expected {expect}", lit.pi())),
            ))
        })
        .collect::<Result<_>>()?;
    let (rule_f, pi_f): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok([
        Check::from_failures(
            "basis products vs convolution",
            "T_s T_t via generator words equals the literal convolution",
            pairs.len(),
            rule_f.into_iter().flatten().collect(),
        ),
        Check::from_failures(
            "pi multiplicative on oracle products",
            "pi(T_s T_t) = q^(l(s)) q^(l(t))",
            pairs.len(),
            pi_f.into_iter().flatten().collect(),
        ),
    ])
}

/// One relation as a pair of linear combinations of generator words.
pub type Expr = Vec<(Rational, Vec<HGen>)>;

fn word(gs: &[HGen]) -> Expr {
    vec![(Rational::one(), gs.to_vec())]
}

fn expr_mul(a: &Expr, b: &Expr) -> Expr {
    let mut out = Vec::new();
    for (c, u) in a {
        for (d, v) in b {
            out.push((c * d, [u.clone(), v.clone()].concat()));
        }
    }
    out
}

fn scalar(c: Rational) -> Expr {
    vec![(c, Vec::new())]
}

fn sum(a: Expr, b: Expr) -> Expr {
    [a, b].concat()
}

pub fn apply_expr(e: &Expr, x: &HeckeElement) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero(x.n, x.q);
    for (c, w) in e {
        out = out.add(&apply_word(w, x)?.scale(c));
    }
    Ok(out)
}

/// F_i^k F_{i+1}^{-k} as a single torus generator.
fn torus_pair(n: usize, q: u32, i: usize, e_i: i64, e_j: i64) -> Result<HGen> {
    Ok(HGen::Torus(a_matrix(n, q, i, e_i)?.mul(&a_matrix(n, q, i + 1, e_j)?)))
}

/// E_i = (1/(q-1)) sum_k F_i^k F_{i+1}^{-k}.
pub fn e_expr(n: usize, q: u32, i: usize) -> Result<Expr> {
    let w = Rational::new(1.into(), (q as i64 - 1).into());
    (0..q as i64 - 1).map(|k| Ok((w.clone(), vec![torus_pair(n, q, i, k, -k)?]))).collect()
}

fn pow_word(g: HGen, k: usize) -> Vec<HGen> {
    vec![g; k]
}

/// Every relation of the T, F, N presentation, checked as an identity of
/// left multiplication operators on every basis element (hence in particular
/// on T_1).
pub fn verify_prop078(n: usize, q: u32) -> Result<Report> {
    PrimeField::odd(q)?;
    crate::error::guard("rank n for the relation suite", n as u128, 3)?;
    let basis = crate::rook::enumerate_q(n, q)?;
    let qr = || Rational::from_integer(q.into());
    let mut report = Report::new("hecke relations", &[("n", n.to_string()), ("q", q.to_string())]);
    let mut family = |name: &str, anchor: &str, rels: Vec<(String, Expr, Expr)>| -> Result<()> {
        let mut failures = Vec::new();
        for (label, l, r) in &rels {
            for s in &basis {
                let x = HeckeElement::basis(s.clone());
                let (a, b) = (apply_expr(l, &x)?, apply_expr(r, &x)?);
                if a != b {
                    failures.push(format!("{label} on T[{s}]: {a} vs {b}"));
                    break;
                }
            }
        }
        report.push(Check::from_failures(name, anchor, rels.len(), failures));
        Ok(())
    };
    use HGen::{F, N, T};

    let mut rels = Vec::new();
    for i in 1..n.saturating_sub(1) {
        rels.push((format!("i={i}"), word(&[T(i), T(i + 1), T(i)]), word(&[T(i + 1), T(i), T(i + 1)])));
    }
    family("braid", "T_i T_(i+1) T_i = T_(i+1) T_i T_(i+1)", rels)?;
    let mut rels = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            rels.push((format!("i={i},j={j}"), word(&[T(i), T(j)]), word(&[T(j), T(i)])));
        }
    }
    family("far commutation", "T_i T_j = T_j T_i for |i-j| > 1", rels)?;

    let rels = (1..=n).map(|i| (format!("i={i}"), word(&pow_word(F(i), q as usize - 1)), scalar(Rational::one()))).collect();
    family("framing order", "F_i^(q-1) = 1", rels)?;
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rels.push((format!("i={i},j={j}"), word(&[F(i), F(j)]), word(&[F(j), F(i)])));
        }
    }
    family("framings commute", "F_i F_j = F_j F_i", rels)?;

    let mut rels = Vec::new();
    for i in 1..n {
        let half = pow_word(F(i), (q as usize - 1) / 2);
        let rhs = sum(scalar(qr()), expr_mul(&expr_mul(&scalar(qr() - Rational::one()), &word(&half)), &expr_mul(&e_expr(n, q, i)?, &word(&[T(i)]))));
        rels.push((format!("i={i}"), word(&[T(i), T(i)]), rhs));
    }
    family("quadratic", "T_i^2 = q + (q-1) F_i^((q-1)/2) E_i T_i, E_i = (1/(q-1)) sum_k F_i^k F_(i+1)^(-k)", rels)?;
    let mut rels = Vec::new();
    for i in 1..n {
        for j in 1..=n {
            let js = if j == i { i + 1 } else if j == i + 1 { i } else { j };
            rels.push((format!("i={i},j={j}"), word(&[T(i), F(j)]), word(&[F(js), T(i)])));
        }
    }
    family("framing transport", "T_i F_j = F_(j s_i) T_i", rels)?;

    let mut rels: Vec<(String, Expr, Expr)> = (1..n).map(|i| (format!("i={i}"), word(&[F(i), N]), word(&[N, F(i + 1)]))).collect();
    rels.push(("N F_1".into(), word(&[N, F(1)]), word(&[N])));
    rels.push(("F_n N".into(), word(&[F(n), N]), word(&[N])));
    family("framing through N", "F_i N = N F_(i+1); N F_1 = F_n N = N", rels)?;

    let mut rels = Vec::new();
    for i in 1..n {
        let np = pow_word(N, i + 1);
        rels.push((format!("left i={i}"), word(&[np.clone(), vec![T(i)]].concat()), expr_mul(&scalar(qr()), &word(&np))));
        let np = pow_word(N, n - i + 1);
        rels.push((format!("right i={i}"), word(&[vec![T(i)], np.clone()].concat()), expr_mul(&scalar(qr()), &word(&np))));
    }
    family("N absorbs T", "N^(i+1) T_i = q N^(i+1); T_i N^(n-i+1) = q N^(n-i+1)", rels)?;

    let mut rels: Vec<(String, Expr, Expr)> =
        (1..n.saturating_sub(1)).map(|i| (format!("i={i}"), word(&[T(i), N]), word(&[N, T(i + 1)]))).collect();
    let mut w = vec![N];
    w.extend((1..n).map(T));
    w.push(N);
    rels.push(("N T_1...T_(n-1) N".into(), word(&w), expr_mul(&scalar(q_pow(q, n as i64 - 1)), &word(&[N]))));
    family("N shifts T", "T_i N = N T_(i+1); N T_1...T_(n-1) N = q^(n-1) N", rels)?;

    // N^n = T_0 and T_0 T_sigma = q^l(sigma) T_0
    let t0 = HeckeElement::basis(canon(&RookMatrix::zero(n, q)));
    let nn = apply_word(&pow_word(N, n), &HeckeElement::one(n, q))?;
    let mut failures = Vec::new();
    if nn != t0 {
        failures.push(format!("N^n = {nn}"));
    }
    for s in &basis {
        let p = general_product(&t0, &HeckeElement::basis(s.clone()))?;
        let want = t0.scale(&q_pow(q, s.length as i64));
        if p != want {
            failures.push(format!("T_0 T[{s}] = {p}"));
        }
    }
    report.push(Check::from_failures("zero element", "N^n = T_0; T_0 T_s = q^l(s) T_0", basis.len() + 1, failures));
    Ok(report)
}

/// One structure constant T_s T_t = sum c T_r, with an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub sigma: String,
    pub tau: String,
    pub rho: String,
    pub coefficient: String,
}

/// Every nonzero structure constant, computed by the multiplication rules.
pub fn structure_constants(n: usize, q: u32) -> Result<Vec<StructureConstant>> {
    let basis = crate::rook::enumerate_q(n, q)?;
    let mut out = Vec::new();
    let words: HashMap<&CanonicalQ, Vec<HGen>> = basis.iter().map(|s| (s, basis_word(s))).collect();
    for s in &basis {
        for t in &basis {
            let p = apply_word(&words[s], &HeckeElement::basis(t.clone()))?;
            for (r, c) in p.terms() {
                out.push(StructureConstant {
                    sigma: s.to_text(),
                    tau: t.to_text(),
                    rho: r.to_text(),
                    coefficient: c.to_string(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FpScalar;

    fn m(s: &str, q: u32) -> CanonicalQ {
        canon(&RookMatrix::parse(s, q).unwrap())
    }

    #[test]
    fn normalizing_exponents() {
        assert_eq!(a_exp(0), 0);
        assert_eq!(a_exp(1), 0);
        assert_eq!(a_exp(2), -1);
        assert_eq!(a_exp(3), -3);
        assert_eq!(q_pow(3, -2), Rational::new(1.into(), 9.into()));
    }

    #[test]
    fn unit_and_simple_square_by_oracle() {
        let o = ConvolutionOracle::new(2, 3).unwrap();
        let one = canon(&RookMatrix::identity(2, 3));
        for s in o.basis() {
            assert_eq!(o.product(&one, s).unwrap(), HeckeElement::basis(s.clone()));
            assert_eq!(o.product(s, &one).unwrap(), HeckeElement::basis(s.clone()));
        }
        let s1 = m("0 1; 1 0", 3);
        let mut want = HeckeElement::one(2, 3).scale(&rat(3));
        for r in 1..=2 {
            let h = h_matrix(2, 3, 1, FpScalar::new(r, 3)).unwrap();
            want.add_term(canon(&h.mul(&s1.matrix)), Rational::one());
        }
        assert_eq!(o.product(&s1, &s1).unwrap(), want);
    }

    #[test]
    fn oracle_pi_and_integrality_n2() {
        let o = ConvolutionOracle::new(2, 3).unwrap();
        for s in o.basis() {
            for t in o.basis() {
                let p = o.product(s, t).unwrap();
                assert_eq!(p.pi(), q_pow(3, (s.length + t.length) as i64));
                assert!(p.is_integral(), "{s} * {t} = {p}");
            }
        }
    }

    #[test]
    fn generator_rules_match_oracle_n2() {
        let o = ConvolutionOracle::new(2, 3).unwrap();
        let c = compare_generator_rules(&o, None).unwrap();
        assert!(c.passed(), "{}", c.detail);
    }

    #[test]
    fn basis_words_rebuild_basis() {
        for (n, q) in [(2, 3), (3, 3), (2, 5)] {
            for s in crate::rook::enumerate_q(n, q).unwrap() {
                let x = apply_word(&basis_word(&s), &HeckeElement::one(n, q)).unwrap();
                assert_eq!(x, HeckeElement::basis(s.clone()), "{s}");
            }
        }
    }

    #[test]
    fn general_product_matches_oracle_n2() {
        let o = ConvolutionOracle::new(2, 3).unwrap();
        for s in o.basis() {
            for t in o.basis() {
                let x = HeckeElement::basis(s.clone());
                let y = HeckeElement::basis(t.clone());
                assert_eq!(general_product(&x, &y).unwrap(), o.product(s, t).unwrap(), "{s} * {t}");
            }
        }
    }

    #[test]
    fn nu_powers() {
        let (n, q) = (3, 3);
        for s in crate::rook::enumerate_q(n, q).unwrap() {
            let mut nu_i = RookMatrix::identity(n, q);
            for i in 0..=n {
                let lhs = apply_word(&vec![HGen::N; i], &HeckeElement::basis(s.clone())).unwrap();
                let ns = canon(&nu_i.mul(&s.matrix));
                let want = HeckeElement::basis(ns.clone()).scale(&q_pow(q, s.length as i64 - ns.length as i64));
                assert_eq!(lhs, want);
                nu_i = nu_matrix(n, q).mul(&nu_i);
            }
        }
    }

    #[test]
    fn same_length_gives_q() {
        // l(s_1 0) = l(0)
        let z = canon(&RookMatrix::zero(2, 3));
        let p = multiply_by_generator(&HGen::T(1), &HeckeElement::basis(z.clone()), Side::Left).unwrap();
        assert_eq!(p, HeckeElement::basis(z).scale(&rat(3)));
    }

    #[test]
    fn relations_hold_n2_q3() {
        let r = verify_prop078(2, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn display() {
        let x = HeckeElement::one(2, 3).scale(&Rational::new(3.into(), 2.into()));
        assert_eq!(x.to_string(), "3/2*T[1 0; 0 1]");
        let y = x.sub(&HeckeElement::basis(m("0 0; 0 0", 3)));
        assert_eq!(y.to_string(), "-T[0 0; 0 0] + 3/2*T[1 0; 0 1]");
        assert_eq!(HeckeElement::zero(2, 3).to_string(), "0");
    }

    #[test]
    fn structure_constants_are_integers_n2() {
        let sc = structure_constants(2, 3).unwrap();
        assert!(sc.iter().all(|c| !c.coefficient.contains('/')));
        assert!(sc.len() >= 17 * 17);
    }

    #[test]
    fn n3_sampled_rules_relations_and_products() {
        let o = ConvolutionOracle::new(3, 3).unwrap();
        let c = compare_generator_rules(&o, Some((200, 7))).unwrap();
        assert!(c.passed(), "{}", c.detail);
        let r = verify_prop078(3, 3).unwrap();
        assert!(r.passed(), "{r}");
        let basis = o.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let s = basis.choose(&mut rng).unwrap();
            let t = basis.choose(&mut rng).unwrap();
            let (x, y) = (HeckeElement::basis(s.clone()), HeckeElement::basis(t.clone()));
            let p = o.product(s, t).unwrap();
            assert_eq!(general_product(&x, &y).unwrap(), p, "{s} * {t}");
            assert_eq!(p.pi(), q_pow(3, (s.length + t.length) as i64));
        }
    }

    #[test]
    fn associativity_n2() {
        let basis = crate::rook::enumerate_q(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let [x, y, z] = [0; 3].map(|_| HeckeElement::basis(basis.choose(&mut rng).unwrap().clone()));
            let l = general_product(&general_product(&x, &y).unwrap(), &z).unwrap();
            let r = general_product(&x, &general_product(&y, &z).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }
}
