use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted; matrix entries are packed into a `u8`.
pub const MAX_MODULUS: u32 = 251;

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Smallest generator of the cyclic group of units mod a prime `q`.
pub fn primitive_root(q: u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = q - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            factors.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (order / f) as u64, q) != 1))
        .expect("a prime has a primitive root")
}

pub(crate) fn pow_mod(base: u32, mut e: u64, q: u32) -> u32 {
    let q64 = q as u64;
    let mut b = base as u64 % q64;
    let mut acc = 1 % q64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q64;
        }
        b = b * b % q64;
        e >>= 1;
    }
    acc as u32
}

/// The prime field F_q together with its fixed generator `a` of F_q^x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u32,
    a: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) || q > MAX_MODULUS {
            return Err(Error::BadModulus(q));
        }
        Ok(PrimeField { q, a: primitive_root(q) })
    }

    /// Same as `new` but rejects q = 2.
    pub fn odd(q: u32) -> Result<Self> {
        let f = Self::new(q)?;
        if q == 2 {
            return Err(Error::EvenModulus(q));
        }
        Ok(f)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> FpScalar {
        FpScalar { residue: self.a, q: self.q }
    }

    pub fn elem(&self, v: i64) -> FpScalar {
        FpScalar::new(v, self.q)
    }

    pub fn zero(&self) -> FpScalar {
        self.elem(0)
    }

    pub fn one(&self) -> FpScalar {
        self.elem(1)
    }

    /// a^k for any integer k.
    pub fn gen_pow(&self, k: i64) -> FpScalar {
        self.generator().pow(k)
    }

    /// Units in the order 1, 2, ..., q-1.
    pub fn units(&self) -> impl Iterator<Item = FpScalar> + '_ {
        (1..self.q).map(move |v| self.elem(v as i64))
    }

    pub fn elements(&self) -> impl Iterator<Item = FpScalar> + '_ {
        (0..self.q).map(move |v| self.elem(v as i64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpScalar {
    residue: u32,
    q: u32,
}

impl FpScalar {
    pub fn new(v: i64, q: u32) -> Self {
        let r = v.rem_euclid(q as i64) as u32;
        FpScalar { residue: r, q }
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_one(&self) -> bool {
        self.residue == 1
    }

    pub fn pow(&self, k: i64) -> FpScalar {
        if k >= 0 {
            FpScalar { residue: pow_mod(self.residue, k as u64, self.q), q: self.q }
        } else {
            self.inv().expect("negative power of zero").pow(-k)
        }
    }

    pub fn inv(&self) -> Result<FpScalar> {
        if self.residue == 0 {
            return Err(Error::NotAUnit);
        }
        Ok(FpScalar { residue: pow_mod(self.residue, (self.q - 2) as u64, self.q), q: self.q })
    }

    /// Discrete log with respect to the smallest primitive root.
    pub fn log(&self) -> Result<u32> {
        fp_pow_log(*self)
    }
}

/// k in [0, q-2] with a^k = x, where a is the smallest primitive root mod q.
pub fn fp_pow_log(x: FpScalar) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::NotAUnit);
    }
    let a = primitive_root(x.q);
    let mut acc = 1u32;
    for k in 0..x.q.saturating_sub(1).max(1) {
        if acc == x.residue {
            return Ok(k);
        }
        acc = acc * a % x.q;
    }
    unreachable!("every unit is a power of a primitive root")
}

fn same(x: &FpScalar, y: &FpScalar) -> u32 {
    assert_eq!(x.q, y.q, "mixed moduli");
    x.q
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        let q = same(&self, &rhs);
        FpScalar { residue: (self.residue + rhs.residue) % q, q }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        let q = same(&self, &rhs);
        FpScalar { residue: (self.residue + q - rhs.residue) % q, q }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        let q = same(&self, &rhs);
        FpScalar { residue: self.residue * rhs.residue % q, q }
    }
}

impl Div for FpScalar {
    type Output = FpScalar;
    fn div(self, rhs: FpScalar) -> FpScalar {
        self * rhs.inv().expect("division by zero in F_q")
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar { residue: (self.q - self.residue) % self.q, q: self.q }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots_of_small_primes() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
    }

    #[test]
    fn log_examples() {
        assert_eq!(fp_pow_log(FpScalar::new(2, 3)).unwrap(), 1);
        assert_eq!(fp_pow_log(FpScalar::new(1, 3)).unwrap(), 0);
        // powers of 3 mod 7: 1, 3, 2, 6, 4, 5
        let mut acc = 1u32;
        let mut brute = None;
        for k in 0..6 {
            if acc == 5 {
                brute = Some(k);
            }
            acc = acc * 3 % 7;
        }
        assert_eq!(fp_pow_log(FpScalar::new(5, 7)).unwrap(), brute.unwrap());
        assert_eq!(fp_pow_log(FpScalar::new(0, 7)), Err(Error::NotAUnit));
    }

    #[test]
    fn log_inverts_pow() {
        for q in [3u32, 5, 7, 11] {
            let f = PrimeField::new(q).unwrap();
            for k in 0..(q - 1) {
                assert_eq!(f.gen_pow(k as i64).log().unwrap(), k);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [3u32, 5, 7] {
            let f = PrimeField::new(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &x in &els {
                if !x.is_zero() {
                    assert!((x * x.inv().unwrap()).is_one());
                }
                assert!((x + (-x)).is_zero());
                for &y in &els {
                    assert_eq!(x + y, y + x);
                    assert_eq!(x * y, y * x);
                    for &z in &els {
                        assert_eq!((x + y) + z, x + (y + z));
                        assert_eq!((x * y) * z, x * (y * z));
                        assert_eq!(x * (y + z), x * y + x * z);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_composites_and_two_when_odd_required() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert_eq!(PrimeField::odd(2), Err(Error::EvenModulus(2)));
    }
}
