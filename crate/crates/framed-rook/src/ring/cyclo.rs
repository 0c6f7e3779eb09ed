use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Integer coefficients of the d-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(d: u32) -> &'static [i64] {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static [i64]>>> = OnceLock::new();
    assert!(d >= 1, "cyclotomic index must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p;
    }
    // x^d - 1 divided by every Phi_e with e | d, e < d.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            num = exact_div(&num, cyclotomic_poly(e));
        }
    }
    let leaked: &'static [i64] = Box::leak(num.into_boxed_slice());
    cache.lock().unwrap().insert(d, leaked);
    leaked
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

pub fn euler_phi(d: u32) -> usize {
    cyclotomic_poly(d).len() - 1
}

/// An element of Q(xi_d), stored as a polynomial in xi of degree < phi(d).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloRational {
    d: u32,
    coeffs: Vec<Rational>,
}

impl CycloRational {
    pub fn zero(d: u32) -> Self {
        CycloRational { d, coeffs: vec![Rational::zero(); euler_phi(d)] }
    }

    pub fn one(d: u32) -> Self {
        Self::from_rational(d, Rational::one())
    }

    pub fn from_int(d: u32, v: i64) -> Self {
        Self::from_rational(d, Rational::from_integer(v.into()))
    }

    pub fn from_rational(d: u32, v: Rational) -> Self {
        let mut z = Self::zero(d);
        z.coeffs[0] = v;
        z
    }

    /// xi^k, any integer k.
    pub fn xi_pow(d: u32, k: i64) -> Self {
        let e = k.rem_euclid(d as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::reduce(d, c)
    }

    /// Build from arbitrary polynomial coefficients in xi.
    pub fn from_poly(d: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(d, coeffs)
    }

    fn reduce(d: u32, mut c: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(d);
        let deg = phi.len() - 1;
        for k in (deg..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut c[k], Rational::zero());
            for (j, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    c[k - deg + j] -= &lead * Rational::from_integer(p.into());
                }
            }
        }
        c.resize(deg, Rational::zero());
        CycloRational { d, coeffs: c }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloRational { d: self.d, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse by solving (multiplication by self) c = 1 over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(Self::from_rational(self.d, self.coeffs[0].recip()));
        }
        // column j holds self * xi^j
        let cols: Vec<CycloRational> = (0..n).map(|j| self * &Self::xi_pow(self.d, j as i64)).collect();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::NotAUnit)?;
            m.swap(col, piv);
            let p = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let v = &m[col][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
        }
        Ok(CycloRational { d: self.d, coeffs: m.into_iter().map(|row| row[n].clone()).collect() })
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed cyclotomic fields");
    }
}

impl<'a> Add<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: &CycloRational) -> CycloRational {
        self.check(rhs);
        CycloRational { d: self.d, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: &CycloRational) -> CycloRational {
        self.check(rhs);
        CycloRational { d: self.d, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: &CycloRational) -> CycloRational {
        self.check(rhs);
        let n = self.coeffs.len();
        if n == 1 {
            return CycloRational { d: self.d, coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]] };
        }
        let mut out = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        CycloRational::reduce(self.d, out)
    }
}

impl Neg for &CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        CycloRational { d: self.d, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: CycloRational) -> CycloRational {
        &self + &rhs
    }
}

impl Sub for CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: CycloRational) -> CycloRational {
        &self - &rhs
    }
}

impl Mul for CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: CycloRational) -> CycloRational {
        &self * &rhs
    }
}

impl Neg for CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        -&self
    }
}

impl AddAssign<&CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: &CycloRational) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloRational> for CycloRational {
    fn sub_assign(&mut self, rhs: &CycloRational) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "xi")?;
                    } else {
                        write!(f, "xi^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_poly_at_xi(d: u32, p: &[i64]) -> CycloRational {
        let mut acc = CycloRational::zero(d);
        for (k, &c) in p.iter().enumerate() {
            acc += &CycloRational::xi_pow(d, k as i64).scale(&Rational::from_integer(c.into()));
        }
        acc
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(cyclotomic_poly(2), &[1, 1]);
        assert_eq!(cyclotomic_poly(3), &[1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn xi_is_a_primitive_root_of_unity() {
        for d in [1u32, 2, 3, 4, 6] {
            let xi = CycloRational::xi_pow(d, 1);
            assert!(xi.pow(d).is_one(), "xi^d = 1 for d = {d}");
            for k in 1..d {
                assert!(!xi.pow(k).is_one(), "xi has order exactly {d}");
            }
            assert!(eval_poly_at_xi(d, cyclotomic_poly(d)).is_zero());
        }
    }

    #[test]
    fn inverses() {
        for d in [1u32, 2, 3, 4, 5, 6] {
            let x = &CycloRational::from_int(d, 2) + &CycloRational::xi_pow(d, 1);
            if x.is_zero() {
                continue;
            }
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(CycloRational::zero(3).inv(), Err(Error::NotAUnit));
    }

    #[test]
    fn display() {
        let x = &CycloRational::from_int(3, 2) - &CycloRational::xi_pow(3, 1);
        assert_eq!(x.to_string(), "2 - xi");
        assert_eq!(CycloRational::xi_pow(3, 2).to_string(), "-1 - xi");
    }
}
