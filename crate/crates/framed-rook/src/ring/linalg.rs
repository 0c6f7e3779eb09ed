use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CycloRational, Rational};
use crate::error::{Error, Result};

/// The operations Gaussian elimination needs.
pub trait FieldElem: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl FieldElem for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl FieldElem for CycloRational {
    fn is_zero(&self) -> bool {
        CycloRational::is_zero(self)
    }
    fn one_like(&self) -> Self {
        CycloRational::one(self.d())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        CycloRational::inv(self).ok()
    }
}

/// Residue modulo a word-sized prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    pub v: u64,
    pub p: u64,
}

impl ModP {
    pub fn new(v: i128, p: u64) -> Self {
        ModP { v: v.rem_euclid(p as i128) as u64, p }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut b = *self;
        let mut acc = ModP { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = FieldElem::mul(&acc, &b);
            }
            b = FieldElem::mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl FieldElem for ModP {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn one_like(&self) -> Self {
        ModP { v: 1, p: self.p }
    }
    fn add(&self, rhs: &Self) -> Self {
        ModP { v: (self.v + rhs.v) % self.p, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        ModP { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        ModP { v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        ModP { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
}

pub type SparseVec<F> = BTreeMap<usize, F>;

/// Row echelon form built one vector at a time. Stored rows have leading
/// coefficient 1; optionally each row remembers which inserted vectors it
/// is made of, so that `solve` can return coordinates.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: FieldElem> {
    rows: Vec<SparseVec<F>>,
    combos: Vec<SparseVec<F>>,
    pivots: BTreeMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl<F: FieldElem> SparseEchelon<F> {
    pub fn new(track: bool) -> Self {
        SparseEchelon { rows: Vec::new(), combos: Vec::new(), pivots: BTreeMap::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows; returns the residual and, when
    /// tracking, the combination of stored inputs that was subtracted.
    pub fn reduce(&self, mut v: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut used: SparseVec<F> = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(&c, x)| (c, x.clone()));
            let Some((col, factor)) = next else { break };
            let ri = self.pivots[&col];
            axpy(&mut v, &factor.neg(), &self.rows[ri]);
            if self.track {
                axpy(&mut used, &factor, &self.combos[ri]);
            }
            cursor = col + 1;
        }
        (v, used)
    }

    /// Insert a vector; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut res, used) = self.reduce(v);
        let Some((&lead, lc)) = res.iter().next() else { return false };
        let scale = lc.inv().expect("nonzero leading entry");
        for x in res.values_mut() {
            *x = x.mul(&scale);
        }
        if self.track {
            // row = scale * (input_idx - used)
            let mut combo: SparseVec<F> = BTreeMap::new();
            combo.insert(idx, scale.clone());
            axpy(&mut combo, &scale.neg(), &used);
            self.combos.push(combo);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(res);
        true
    }

    /// Coordinates of `v` in the inserted vectors when `v` lies in their span.
    pub fn solve(&self, v: SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.track, "solve needs combination tracking");
        let (res, used) = self.reduce(v);
        res.is_empty().then_some(used)
    }
}

/// y += a * x
pub fn axpy<F: FieldElem>(y: &mut SparseVec<F>, a: &F, x: &SparseVec<F>) {
    if a.is_zero() {
        return;
    }
    for (&c, xv) in x {
        let delta = a.mul(xv);
        match y.get_mut(&c) {
            Some(e) => {
                *e = e.add(&delta);
                if e.is_zero() {
                    y.remove(&c);
                }
            }
            None => {
                y.insert(c, delta);
            }
        }
    }
}

/// Exact rank of a dense matrix over Q(xi_d).
pub fn rank_over_field(rows: &[Vec<CycloRational>]) -> Result<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::Ragged { row: i, len: r.len(), expected: width });
        }
    }
    Ok(rank_of(rows.iter().map(|r| {
        r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect()
    })))
}

/// Rank of a family of sparse vectors over any field.
pub fn rank_of<F: FieldElem>(rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut ech = SparseEchelon::new(false);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> CycloRational {
        CycloRational::from_int(3, v)
    }

    #[test]
    fn rank_examples() {
        let id: Vec<Vec<_>> = (0..3).map(|i| (0..3).map(|j| c((i == j) as i64)).collect()).collect();
        assert_eq!(rank_over_field(&id).unwrap(), 3);
        let twice = vec![vec![c(1), c(2)], vec![c(1), c(2)]];
        assert_eq!(rank_over_field(&twice).unwrap(), 1);
        let ragged = vec![vec![c(1), c(2)], vec![c(1)]];
        assert!(matches!(rank_over_field(&ragged), Err(Error::Ragged { row: 1, .. })));
    }

    #[test]
    fn rank_uses_cyclotomic_arithmetic() {
        // (1, xi) and (xi^2, 1) are dependent because xi^3 = 1
        let xi = |k| CycloRational::xi_pow(3, k);
        let rows = vec![vec![xi(0), xi(1)], vec![xi(2), xi(0)]];
        assert_eq!(rank_over_field(&rows).unwrap(), 1);
    }

    #[test]
    fn solve_returns_coordinates() {
        let r = |v: &[i64]| -> SparseVec<Rational> {
            v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, Rational::from_integer(x.into()))).collect()
        };
        let mut e = SparseEchelon::new(true);
        assert!(e.insert(r(&[1, 1, 0])));
        assert!(e.insert(r(&[0, 1, 1])));
        assert!(!e.insert(r(&[1, 2, 1])));
        let x = e.solve(r(&[2, 5, 3])).unwrap();
        assert_eq!(x.get(&0), Some(&Rational::from_integer(2.into())));
        assert_eq!(x.get(&1), Some(&Rational::from_integer(3.into())));
        assert!(e.solve(r(&[1, 0, 0])).is_none());
    }

    #[test]
    fn modular_rank() {
        let p = 101;
        let rows: Vec<SparseVec<ModP>> = vec![
            [(0, ModP::new(1, p)), (1, ModP::new(2, p))].into_iter().collect(),
            [(0, ModP::new(3, p)), (1, ModP::new(6, p))].into_iter().collect(),
        ];
        assert_eq!(rank_of(rows), 1);
    }
}
