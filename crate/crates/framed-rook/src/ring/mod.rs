//! Exact scalars: rationals, prime fields, cyclotomic rationals, Laurent
//! polynomials in t = u^(1/2), and elimination over any of them.

mod cyclo;
mod fp;
mod laurent;
mod linalg;

pub use cyclo::{cyclotomic_poly, euler_phi, CycloRational};
pub use fp::{fp_pow_log, is_prime, primitive_root, FpScalar, PrimeField, MAX_MODULUS};
pub use laurent::CycloLaurent;
pub use linalg::{axpy, rank_of, rank_over_field, FieldElem, ModP, SparseEchelon, SparseVec};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Laurent polynomial specialization, as a free function.
pub fn laurent_specialize(p: &CycloLaurent, t0: &Rational) -> crate::error::Result<CycloRational> {
    p.specialize(t0)
}

/// Parse "a" or "a/b".
pub fn parse_rational(s: &str) -> crate::error::Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| crate::error::Error::Parse(format!("{s:?}: {e}")))
}
