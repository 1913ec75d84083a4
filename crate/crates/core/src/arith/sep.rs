use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::traits::Domain;
use super::{ArithError, Poly, Rat, Var};

/// A separated product `c * w_1(s_1) * ... * w_r(s_r)`.
///
/// Irreducible factors of such products live in single variables, so gcd
/// and lcm factor variable by variable. Stored factors are monic and of
/// positive degree; the constant absorbs leading coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepPoly {
    constant: Rat,
    factors: BTreeMap<Var, Poly>,
}

impl SepPoly {
    pub fn zero() -> SepPoly {
        SepPoly { constant: Rat::zero(), factors: BTreeMap::new() }
    }

    pub fn one() -> SepPoly {
        SepPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> SepPoly {
        SepPoly { constant: c, factors: BTreeMap::new() }
    }

    /// Lift a univariate polynomial, using its own variable.
    pub fn from_poly(p: &Poly) -> SepPoly {
        let Some(lc) = p.leading() else {
            return SepPoly::zero();
        };
        let mut out = SepPoly::constant(lc.clone());
        if !p.is_constant() {
            out.factors.insert(p.var(), p.monic());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn factor(&self, var: Var) -> Option<&Poly> {
        self.factors.get(&var)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Var, &Poly)> {
        self.factors.iter()
    }

    /// The factor in `var`, one if absent.
    fn factor_or_one(&self, var: Var) -> Poly {
        self.factors.get(&var).cloned().unwrap_or_else(|| Poly::one().with_var(var))
    }

    fn vars_of<'a>(&'a self, other: &'a SepPoly) -> impl Iterator<Item = Var> + 'a {
        let mut vars: Vec<Var> = self.factors.keys().chain(other.factors.keys()).copied().collect();
        vars.sort();
        vars.dedup();
        vars.into_iter()
    }

    fn insert_factor(&mut self, p: Poly) {
        if p.is_zero() {
            *self = SepPoly::zero();
            return;
        }
        let lc = p.leading().expect("nonzero").clone();
        self.constant *= lc;
        if !p.is_constant() {
            self.factors.insert(p.var(), p.monic());
        }
    }

    pub fn mul(&self, other: &SepPoly) -> SepPoly {
        if self.is_zero() || other.is_zero() {
            return SepPoly::zero();
        }
        let mut out = SepPoly::constant(&self.constant * &other.constant);
        for v in self.vars_of(other) {
            out.insert_factor(&self.factor_or_one(v) * &other.factor_or_one(v));
        }
        out
    }

    /// Factor-wise gcd, normalized to constant one. `gcd(0, q) = q`.
    pub fn gcd(&self, other: &SepPoly) -> SepPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let mut out = SepPoly::one();
        for v in self.vars_of(other) {
            out.insert_factor(self.factor_or_one(v).gcd(&other.factor_or_one(v)));
        }
        out
    }

    /// Factor-wise lcm, normalized; zero if either side is zero.
    pub fn lcm(&self, other: &SepPoly) -> SepPoly {
        if self.is_zero() || other.is_zero() {
            return SepPoly::zero();
        }
        let mut out = SepPoly::one();
        for v in self.vars_of(other) {
            out.insert_factor(self.factor_or_one(v).lcm(&other.factor_or_one(v)));
        }
        out
    }

    pub fn div_exact(&self, divisor: &SepPoly) -> Result<SepPoly, ArithError> {
        if divisor.is_zero() {
            return if self.is_zero() { Ok(SepPoly::zero()) } else { Err(ArithError::DivisionByZero) };
        }
        if self.is_zero() {
            return Ok(SepPoly::zero());
        }
        let mut out = SepPoly::constant(&self.constant / &divisor.constant);
        for v in self.vars_of(divisor) {
            let q = self.factor_or_one(v).div_exact(&divisor.factor_or_one(v)).map_err(|_| {
                ArithError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() }
            })?;
            out.insert_factor(q);
        }
        Ok(out)
    }

    /// Constant one (zero stays zero).
    pub fn normalized(&self) -> SepPoly {
        if self.is_zero() {
            return SepPoly::zero();
        }
        SepPoly { constant: Rat::one(), factors: self.factors.clone() }
    }
}

impl fmt::Display for SepPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.constant);
        }
        let mut parts = Vec::new();
        if !self.constant.is_one() {
            parts.push(self.constant.to_string());
        }
        parts.extend(self.factors.values().map(|p| format!("({p})")));
        f.write_str(&parts.join(" * "))
    }
}

impl Domain for SepPoly {
    fn zero() -> Self {
        SepPoly::zero()
    }

    fn one() -> Self {
        SepPoly::one()
    }

    fn is_zero(&self) -> bool {
        SepPoly::is_zero(self)
    }

    fn mul(&self, other: &Self) -> Self {
        SepPoly::mul(self, other)
    }

    fn gcd(&self, other: &Self) -> Self {
        SepPoly::gcd(self, other)
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        SepPoly::div_exact(self, other).ok()
    }

    fn canonical(&self) -> Self {
        self.normalized()
    }

    fn is_unit(&self) -> bool {
        !self.is_zero() && self.factors.is_empty()
    }

    fn lcm(&self, other: &Self) -> Self {
        SepPoly::lcm(self, other)
    }
}
