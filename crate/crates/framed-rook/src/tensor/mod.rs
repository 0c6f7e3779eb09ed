//! The tensor space U^{⊗n}, U = S ⊕ V with V spanned by v_i^s (i in [n],
//! s in [d]), and the operators F_i, T_i, E_i, N acting on it.
//!
//! Operators act on the left and a product word applies its rightmost
//! factor first, so rho(XY) = rho(X) rho(Y).

pub mod basis;
pub mod relations;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{guard, Error, Result};
use crate::ring::{CycloLaurent, CycloRational, Rational};

/// Basis words beyond this many are refused.
pub const WORD_LIMIT: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// v_0, the unit of S
    Scalar,
    /// v_i^s
    V { i: u8, s: u8 },
}

impl Letter {
    pub fn is_scalar(&self) -> bool {
        matches!(self, Letter::Scalar)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Scalar => f.write_str("v0"),
            Letter::V { i, s } => write!(f, "v{i}^{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorBasisWord(pub Vec<Letter>);

impl TensorBasisWord {
    pub fn scalar(n: usize) -> Self {
        TensorBasisWord(vec![Letter::Scalar; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Positions (1-based) holding a non-scalar letter.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.0.len()).filter(|&k| !self.0[k - 1].is_scalar()).collect()
    }

    /// Every basis word of U^{⊗n}, in lexicographic order.
    pub fn all(n: usize, d: u32) -> Result<Vec<Self>> {
        let letters = letters(n, d);
        guard("tensor basis words", (letters.len() as u128).pow(n as u32), WORD_LIMIT)?;
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    letters.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(TensorBasisWord).collect())
    }
}

impl fmt::Display for TensorBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("⊗"))
    }
}

/// The basis of U: v_0, then v_i^s ordered by (i, s).
pub fn letters(n: usize, d: u32) -> Vec<Letter> {
    let mut v = vec![Letter::Scalar];
    for i in 1..=n as u8 {
        for s in 1..=d as u8 {
            v.push(Letter::V { i, s });
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    d: u32,
    terms: BTreeMap<TensorBasisWord, CycloLaurent>,
}

impl TensorVector {
    pub fn zero(d: u32) -> Self {
        TensorVector { d, terms: BTreeMap::new() }
    }

    pub fn basis(d: u32, w: TensorBasisWord) -> Self {
        let mut v = Self::zero(d);
        v.add_term(w, CycloLaurent::one(d));
        v
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorBasisWord, &CycloLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TensorBasisWord) -> CycloLaurent {
        self.terms.get(w).cloned().unwrap_or_else(|| CycloLaurent::zero(self.d))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: TensorBasisWord, c: CycloLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &CycloLaurent) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &CycloLaurent) -> Self {
        let mut out = Self::zero(self.d);
        out.add_scaled(self, c);
        out
    }

    /// Union of the supports of the words present.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        let mut s: Vec<Vec<usize>> = self.terms.keys().map(|w| w.support()).collect();
        s.sort();
        s.dedup();
        s
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// How E_i is realized: by the explicit two-factor operator, or as the
/// average (1/d) sum_k F_i^k F_{i+1}^{-k} of framing operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EMode {
    Averaged,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// F_i^k
    F(usize, u32),
    T(usize),
    /// The explicit operator E at factors i, i+1.
    E(usize),
    N,
}

/// A noncommutative polynomial in the operators.
#[derive(Clone, Debug)]
pub enum OpExpr {
    Gen(Op),
    Scalar(CycloLaurent),
    Sum(Vec<OpExpr>),
    Prod(Vec<OpExpr>),
}

impl OpExpr {
    pub fn word(ops: &[Op]) -> Self {
        OpExpr::Prod(ops.iter().cloned().map(OpExpr::Gen).collect())
    }

    pub fn identity(d: u32) -> Self {
        OpExpr::Scalar(CycloLaurent::one(d))
    }

    pub fn times(self, other: OpExpr) -> Self {
        OpExpr::Prod(vec![self, other])
    }

    pub fn scaled(self, c: CycloLaurent) -> Self {
        OpExpr::Prod(vec![OpExpr::Scalar(c), self])
    }

    pub fn plus(self, other: OpExpr) -> Self {
        OpExpr::Sum(vec![self, other])
    }

    pub fn pow(self, k: usize) -> Self {
        OpExpr::Prod(vec![self; k])
    }
}

/// (-1)^((d-1)s)
fn sign(d: u32, s: u8) -> i64 {
    if ((d as u64 - 1) * s as u64) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct TensorRep {
    n: usize,
    d: u32,
    mode: EMode,
}

impl TensorRep {
    pub fn new(n: usize, d: u32, mode: EMode) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Parse(format!("need n, d >= 1, got n = {n}, d = {d}")));
        }
        crate::ring::cyclotomic_poly(d);
        Ok(TensorRep { n, d, mode })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn mode(&self) -> EMode {
        self.mode
    }

    pub fn basis_words(&self) -> Result<Vec<TensorBasisWord>> {
        TensorBasisWord::all(self.n, self.d)
    }

    fn int(&self, v: i64) -> CycloLaurent {
        CycloLaurent::from_int(self.d, v)
    }

    fn t_pow(&self, k: i32) -> CycloLaurent {
        CycloLaurent::t_pow(self.d, k)
    }

    /// One operator on one basis word.
    pub fn apply_op_word(&self, op: &Op, w: &TensorBasisWord) -> TensorVector {
        let d = self.d;
        let mut out = TensorVector::zero(d);
        match *op {
            Op::F(i, k) => {
                let c = match w.0[i - 1] {
                    Letter::Scalar => CycloLaurent::one(d),
                    Letter::V { s, .. } => CycloLaurent::xi_pow(d, s as i64 * k as i64),
                };
                out.add_term(w.clone(), c);
            }
            Op::E(i) => {
                let (x, y) = (w.0[i - 1], w.0[i]);
                let keep = match (x, y) {
                    (Letter::Scalar, Letter::Scalar) => true,
                    (Letter::V { s, .. }, Letter::V { s: t, .. }) => s == t,
                    _ => false,
                };
                if keep {
                    out.add_term(w.clone(), CycloLaurent::one(d));
                }
            }
            Op::T(i) => {
                let (x, y) = (w.0[i - 1], w.0[i]);
                let mut flipped = w.clone();
                flipped.0.swap(i - 1, i);
                match (x, y) {
                    (Letter::Scalar, Letter::Scalar) => out.add_term(w.clone(), self.t_pow(2)),
                    (Letter::V { i: a, s }, Letter::V { i: b, s: t }) if s == t => {
                        let sg = self.int(sign(d, s));
                        if a == b {
                            out.add_term(w.clone(), &sg * &self.t_pow(2));
                        } else if a > b {
                            out.add_term(flipped, &sg * &self.t_pow(1));
                        } else {
                            out.add_term(w.clone(), &sg * &(&self.t_pow(2) - &self.int(1)));
                            out.add_term(flipped, &sg * &self.t_pow(1));
                        }
                    }
                    _ => out.add_term(flipped, self.t_pow(1)),
                }
            }
            Op::N => {
                if w.0[0].is_scalar() {
                    let eps = w.support().len() as i32;
                    let mut rot = w.0[1..].to_vec();
                    rot.push(Letter::Scalar);
                    out.add_term(TensorBasisWord(rot), self.t_pow(eps));
                }
            }
        }
        out
    }

    pub fn apply_op(&self, op: &Op, x: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(self.d);
        for (w, c) in x.terms() {
            out.add_scaled(&self.apply_op_word(op, w), c);
        }
        out
    }

    pub fn eval(&self, e: &OpExpr, x: &TensorVector) -> TensorVector {
        match e {
            OpExpr::Gen(op) => self.apply_op(op, x),
            OpExpr::Scalar(c) => x.scale(c),
            OpExpr::Sum(parts) => {
                let mut out = TensorVector::zero(self.d);
                for p in parts {
                    out.add_scaled(&self.eval(p, x), &CycloLaurent::one(self.d));
                }
                out
            }
            OpExpr::Prod(parts) => {
                let mut y = x.clone();
                for p in parts.iter().rev() {
                    if y.is_zero() {
                        break;
                    }
                    y = self.eval(p, &y);
                }
                y
            }
        }
    }

    fn check_factor(&self, i: usize, bound: usize) -> Result<()> {
        if i == 0 || i > bound {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    pub fn apply_f(&self, i: usize, x: &TensorVector) -> Result<TensorVector> {
        self.check_factor(i, self.n)?;
        Ok(self.apply_op(&Op::F(i, 1), x))
    }

    pub fn apply_t(&self, i: usize, x: &TensorVector) -> Result<TensorVector> {
        self.check_factor(i, self.n - 1)?;
        Ok(self.apply_op(&Op::T(i), x))
    }

    /// E_i in the configured mode.
    pub fn apply_e(&self, i: usize, x: &TensorVector) -> Result<TensorVector> {
        self.check_factor(i, self.n - 1)?;
        Ok(self.eval(&self.e(i), x))
    }

    pub fn apply_n(&self, x: &TensorVector) -> TensorVector {
        self.apply_op(&Op::N, x)
    }

    pub fn f(&self, i: usize) -> OpExpr {
        self.f_pow(i, 1)
    }

    /// F_i^k for any integer k.
    pub fn f_pow(&self, i: usize, k: i64) -> OpExpr {
        OpExpr::Gen(Op::F(i, k.rem_euclid(self.d as i64) as u32))
    }

    pub fn t(&self, i: usize) -> OpExpr {
        OpExpr::Gen(Op::T(i))
    }

    pub fn nu(&self) -> OpExpr {
        OpExpr::Gen(Op::N)
    }

    /// E_i per the configured mode.
    pub fn e(&self, i: usize) -> OpExpr {
        match self.mode {
            EMode::Explicit => OpExpr::Gen(Op::E(i)),
            EMode::Averaged => self.e_averaged(i),
        }
    }

    /// (1/d) sum_k F_i^k F_{i+1}^{-k}
    pub fn e_averaged(&self, i: usize) -> OpExpr {
        let w = CycloLaurent::monomial(0, CycloRational::from_rational(self.d, Rational::new(1.into(), (self.d as i64).into())));
        OpExpr::Sum(
            (0..self.d as i64)
                .map(|k| self.f_pow(i, k).times(self.f_pow(i + 1, -k)).scaled(w.clone()))
                .collect(),
        )
    }

    /// The exponent (d^2 - d)/2.
    pub fn half_exponent(&self) -> i64 {
        let d = self.d as i64;
        (d * d - d) / 2
    }

    /// u^{-1} T_i - (1 - u^{-1}) F_i^{(d^2-d)/2} E_i
    pub fn t_inv(&self, i: usize) -> OpExpr {
        let u_inv = CycloLaurent::u_pow(self.d, -1);
        let c = &u_inv - &self.int(1);
        self.t(i).scaled(u_inv).plus(self.f_pow(i, self.half_exponent()).times(self.e(i)).scaled(c))
    }

    /// T_1 ... T_{n-1}
    pub fn t_chain(&self) -> OpExpr {
        OpExpr::Prod((1..self.n).map(|i| self.t(i)).collect())
    }

    /// R = T_1 ... T_{n-1} N
    pub fn r(&self) -> OpExpr {
        self.t_chain().times(self.nu())
    }

    /// R_1 = R, R_{i+1} = T_i R_i T_i^{-1}.
    pub fn r_i(&self, i: usize) -> OpExpr {
        if i <= 1 {
            self.r()
        } else {
            OpExpr::Prod(vec![self.t(i - 1), self.r_i(i - 1), self.t_inv(i - 1)])
        }
    }

    /// P = u^{1-n} R
    pub fn p(&self) -> OpExpr {
        self.r().scaled(CycloLaurent::u_pow(self.d, 1 - self.n as i32))
    }

    /// P_i = u^{(1-n)i} (T_1 ... T_{n-1})^i N^i
    pub fn p_i(&self, i: usize) -> OpExpr {
        let c = CycloLaurent::u_pow(self.d, (1 - self.n as i32) * i as i32);
        self.t_chain().pow(i).times(self.nu().pow(i)).scaled(c)
    }

    /// T_{k,j} = T_{k-1} ... T_j for j <= k (the identity when k = j).
    pub fn t_kj(&self, k: usize, j: usize) -> Vec<Op> {
        (j..k).rev().map(Op::T).collect()
    }

    /// T_w for a reduced word of w.
    pub fn t_word(&self, word: &[usize]) -> Vec<Op> {
        word.iter().map(|&k| Op::T(k)).collect()
    }
}
