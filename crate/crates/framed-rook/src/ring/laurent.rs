use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CycloRational, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in t = u^(1/2) with coefficients in Q(xi_d).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloLaurent {
    d: u32,
    terms: BTreeMap<i32, CycloRational>,
}

impl CycloLaurent {
    pub fn zero(d: u32) -> Self {
        CycloLaurent { d, terms: BTreeMap::new() }
    }

    pub fn one(d: u32) -> Self {
        Self::monomial(0, CycloRational::one(d))
    }

    pub fn from_int(d: u32, v: i64) -> Self {
        Self::monomial(0, CycloRational::from_int(d, v))
    }

    /// t^k
    pub fn t_pow(d: u32, k: i32) -> Self {
        Self::monomial(k, CycloRational::one(d))
    }

    /// u^k = t^(2k)
    pub fn u_pow(d: u32, k: i32) -> Self {
        Self::t_pow(d, 2 * k)
    }

    pub fn xi_pow(d: u32, k: i64) -> Self {
        Self::monomial(0, CycloRational::xi_pow(d, k))
    }

    pub fn monomial(k: i32, c: CycloRational) -> Self {
        let d = c.d();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        CycloLaurent { d, terms }
    }

    /// Build from (exponent of t, coefficient) pairs; repeated exponents add up.
    pub fn from_terms(d: u32, terms: impl IntoIterator<Item = (i32, CycloRational)>) -> Self {
        let mut out = Self::zero(d);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i32, c: &CycloRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &CycloRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units are exactly the monomials with a nonzero coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let (&k, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(-k, c.inv()?))
    }

    pub fn scale(&self, c: &CycloRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        CycloLaurent { d: self.d, terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.d);
        }
        CycloLaurent { d: self.d, terms: self.terms.iter().map(|(&k, v)| (k, v.scale(r))).collect() }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i32) -> Self {
        CycloLaurent { d: self.d, terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute t = t0.
    pub fn specialize(&self, t0: &Rational) -> Result<CycloRational> {
        if t0.is_zero() && self.terms.keys().any(|&k| k < 0) {
            return Err(Error::PoleAtZero);
        }
        let mut acc = CycloRational::zero(self.d);
        for (&k, c) in &self.terms {
            let p = if k >= 0 { pow_rat(t0, k as u32) } else { pow_rat(t0, (-k) as u32).recip() };
            acc += &c.scale(&p);
        }
        Ok(acc)
    }

    pub fn add_assign_ref(&mut self, rhs: &CycloLaurent) {
        assert_eq!(self.d, rhs.d, "mixed cyclotomic fields");
        for (&k, c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

fn pow_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl<'a> Add<&'a CycloLaurent> for &'a CycloLaurent {
    type Output = CycloLaurent;
    fn add(self, rhs: &CycloLaurent) -> CycloLaurent {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a CycloLaurent> for &'a CycloLaurent {
    type Output = CycloLaurent;
    fn sub(self, rhs: &CycloLaurent) -> CycloLaurent {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl<'a> Mul<&'a CycloLaurent> for &'a CycloLaurent {
    type Output = CycloLaurent;
    fn mul(self, rhs: &CycloLaurent) -> CycloLaurent {
        assert_eq!(self.d, rhs.d, "mixed cyclotomic fields");
        let mut out = CycloLaurent::zero(self.d);
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &CycloLaurent {
    type Output = CycloLaurent;
    fn neg(self) -> CycloLaurent {
        CycloLaurent { d: self.d, terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Add for CycloLaurent {
    type Output = CycloLaurent;
    fn add(mut self, rhs: CycloLaurent) -> CycloLaurent {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for CycloLaurent {
    type Output = CycloLaurent;
    fn sub(self, rhs: CycloLaurent) -> CycloLaurent {
        &self - &rhs
    }
}

impl Mul for CycloLaurent {
    type Output = CycloLaurent;
    fn mul(self, rhs: CycloLaurent) -> CycloLaurent {
        &self * &rhs
    }
}

impl Neg for CycloLaurent {
    type Output = CycloLaurent;
    fn neg(self) -> CycloLaurent {
        -&self
    }
}

impl fmt::Display for CycloLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn specialization_examples() {
        let p = &CycloLaurent::t_pow(1, 2) - &CycloLaurent::one(1);
        assert_eq!(p.specialize(&r(3, 1)).unwrap(), CycloRational::from_int(1, 8));
        let p = CycloLaurent::t_pow(1, -2);
        assert_eq!(p.specialize(&r(1, 2)).unwrap(), CycloRational::from_int(1, 4));
        assert_eq!(p.specialize(&r(0, 1)), Err(Error::PoleAtZero));
        assert_eq!(CycloLaurent::t_pow(1, 3).specialize(&r(0, 1)).unwrap(), CycloRational::zero(1));
    }

    #[test]
    fn no_stored_zeros_and_units() {
        let x = &CycloLaurent::t_pow(3, 1) - &CycloLaurent::t_pow(3, 1);
        assert!(x.is_zero());
        let m = CycloLaurent::monomial(-3, CycloRational::xi_pow(3, 1));
        assert!(m.is_unit());
        assert!((&m * &m.inv().unwrap()).is_one());
        let b = &m + &CycloLaurent::one(3);
        assert!(!b.is_unit());
        assert_eq!(b.inv(), Err(Error::NotAUnit));
    }
}
