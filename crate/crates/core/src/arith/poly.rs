use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::traits::{Domain, Euclidean, Ring};
use super::{ArithError, Rat};

/// Name of the single formal variable of a [`Poly`]: `s`, `s1`, `s2`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Var(pub u8);

impl Var {
    pub const S: Var = Var(0);

    /// The `i`-th separated variable `s{i}`, one-based.
    pub fn indexed(i: u8) -> Var {
        assert!(i > 0, "indexed variables start at s1");
        Var(i)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("s"),
            i => write!(f, "s{i}"),
        }
    }
}

impl FromStr for Var {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let rest = text.strip_prefix('s').ok_or_else(|| format!("not a variable: {text}"))?;
        if rest.is_empty() {
            return Ok(Var::S);
        }
        match rest.parse::<u8>() {
            Ok(i) if i > 0 && !rest.starts_with('0') => Ok(Var(i)),
            _ => Err(format!("not a variable: {text}")),
        }
    }
}

/// Univariate polynomial with rational coefficients, lowest degree first.
///
/// Constants belong to every `Q[s_i]`, so the variable of a constant is
/// ignored by equality and by the mixed-variable checks.
#[derive(Clone, Debug)]
pub struct Poly {
    coeffs: Vec<Rat>,
    var: Var,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.coeffs.len() <= 1 || self.var == other.var)
    }
}

impl Eq for Poly {}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new(), var: Var::S }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(Var::S, vec![c])
    }

    /// The variable itself.
    pub fn var_poly(var: Var) -> Poly {
        Poly::from_coeffs(var, vec![Rat::zero(), Rat::one()])
    }

    /// `var - root`.
    pub fn linear(var: Var, root: &Rat) -> Poly {
        Poly::from_coeffs(var, vec![-root.clone(), Rat::one()])
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(var, coeffs.iter().map(|&c| super::int(c)).collect())
    }

    /// Monic product of `(var - root)` over the given roots.
    pub fn from_roots<'a>(var: Var, roots: impl IntoIterator<Item = &'a Rat>) -> Poly {
        roots
            .into_iter()
            .fold(Poly::one().with_var(var), |acc, r| &acc * &Poly::linear(var, r))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Poly {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub(crate) fn check_var(&self, other: &Poly) -> Result<Var, ArithError> {
        match (self.is_constant(), other.is_constant()) {
            (true, true) => Ok(self.var),
            (true, false) => Ok(other.var),
            (false, true) => Ok(self.var),
            (false, false) if self.var == other.var => Ok(self.var),
            _ => Err(ArithError::VariableMismatch(self.var, other.var)),
        }
    }

    fn joint_var(&self, other: &Poly) -> Var {
        match self.check_var(other) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero().with_var(self.var);
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect(), var: self.var }
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        Poly::from_coeffs(self.var, coeffs)
    }

    /// `p(s + m)` by Horner's scheme.
    pub fn shift(&self, m: &Rat) -> Poly {
        let step = Poly::from_coeffs(self.var, vec![m.clone(), Rat::one()]);
        let mut acc = Poly::zero().with_var(self.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &step) + &Poly::constant(c.clone());
        }
        acc.with_var(self.var)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one().with_var(self.var), |acc, _| &acc * self)
    }

    /// Division with remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let var = self.joint_var(divisor);
        let dl = divisor.leading().expect("division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero().with_var(var), self.clone().with_var(var));
        }
        let inv = dl.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(var, quot), Poly::from_coeffs(var, rem))
    }

    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, ArithError> {
        self.check_var(divisor)?;
        if divisor.is_zero() {
            return if self.is_zero() { Ok(self.clone()) } else { Err(ArithError::DivisionByZero) };
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() })
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd by the Euclidean algorithm; panics on mixed variables.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let var = self.joint_var(other);
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a.with_var(var)
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero().with_var(self.joint_var(other));
        }
        let g = self.gcd(other);
        (&self.div_rem(&g).0 * other).monic()
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let var = self.joint_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(var, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let var = self.joint_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(var, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let var = self.joint_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero().with_var(var);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(var, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), var: self.var }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_poly(self))
    }
}

impl Domain for Poly {
    fn zero() -> Self {
        Poly::zero()
    }

    fn one() -> Self {
        Poly::one()
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn gcd(&self, other: &Self) -> Self {
        Poly::gcd(self, other)
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        Poly::div_exact(self, other).ok()
    }

    fn canonical(&self) -> Self {
        self.monic()
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    fn lcm(&self, other: &Self) -> Self {
        Poly::lcm(self, other)
    }
}

impl Ring for Poly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn neg(&self) -> Self {
        -self
    }
}

impl Euclidean for Poly {
    type Size = usize;

    fn size(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        Poly::div_rem(self, divisor)
    }

    fn normalizing_unit(&self) -> Self {
        match self.leading() {
            Some(lc) => Poly::constant(lc.recip()),
            None => Poly::one(),
        }
    }

    fn unit_inverse(&self) -> Self {
        Poly::constant(self.coeffs[0].recip())
    }
}

impl Poly {
    /// Sign of the leading coefficient; zero for the zero polynomial.
    pub fn leading_sign(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }
}
