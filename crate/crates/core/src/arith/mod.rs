//! Exact arithmetic: big rationals, univariate polynomials over the
//! rationals, separated products and the ring traits shared by the
//! matrix and annihilator code.

mod factored;
mod int;
mod poly;
mod roots;
mod sep;
mod traits;

pub use factored::Factored;
pub use poly::{Poly, Var};
pub use roots::{rational_roots, RootSplit};
pub use sep::SepPoly;
pub use traits::{Domain, Euclidean, Ring};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("lcm of the zero polynomial")]
    ZeroLcm,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly, ArithError> {
    p.check_var(q)?;
    Ok(p.gcd(q))
}

/// Monic lcm of two nonzero polynomials.
pub fn poly_lcm(p: &Poly, q: &Poly) -> Result<Poly, ArithError> {
    p.check_var(q)?;
    if p.is_zero() || q.is_zero() {
        return Err(ArithError::ZeroLcm);
    }
    Ok(p.lcm(q))
}

/// `p(s + m)`.
pub fn poly_shift(p: &Poly, m: i64) -> Poly {
    p.shift(&int(m))
}

pub fn sep_gcd(p: &SepPoly, q: &SepPoly) -> SepPoly {
    p.gcd(q)
}

pub fn sep_lcm(p: &SepPoly, q: &SepPoly) -> SepPoly {
    p.lcm(q)
}

pub fn sep_mul(p: &SepPoly, q: &SepPoly) -> SepPoly {
    p.mul(q)
}

pub fn sep_divexact(p: &SepPoly, q: &SepPoly) -> Result<SepPoly, ArithError> {
    p.div_exact(q)
}
