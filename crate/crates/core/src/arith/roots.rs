//! Rational root extraction.
//!
//! Real roots of the squarefree part are isolated with Descartes' rule of
//! signs on dyadic intervals (Vincent-Collins-Akritas bisection). An
//! isolating interval narrower than `1 / lc^2` holds at most one fraction
//! whose denominator divides the leading coefficient, so the simplest
//! fraction in it is the only rational candidate and is tested exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rat};

/// Rational roots with multiplicity plus the monic rational-root-free rest.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    /// Ascending, repeated according to multiplicity.
    pub roots: Vec<Rat>,
    pub residual: Poly,
}

impl RootSplit {
    /// `prod (s - root) * residual`.
    pub fn reconstruct(&self) -> Poly {
        let var = self.residual.var();
        &Poly::from_roots(var, &self.roots) * &self.residual
    }
}

pub fn rational_roots(p: &Poly) -> RootSplit {
    let var = p.var();
    if p.is_zero() {
        return RootSplit { roots: Vec::new(), residual: p.clone() };
    }
    let monic = p.monic();
    let squarefree = monic.div_rem(&monic.gcd(&monic.derivative())).0;
    let mut residual = monic;
    let mut roots = Vec::new();
    for root in simple_rational_roots(&squarefree) {
        let lin = Poly::linear(var, &root);
        loop {
            let (q, r) = residual.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            residual = q;
            roots.push(root.clone());
        }
    }
    roots.sort();
    RootSplit { roots, residual: residual.monic().with_var(var) }
}

/// Rational roots of a squarefree polynomial, ascending.
fn simple_rational_roots(p: &Poly) -> Vec<Rat> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut coeffs = primitive_integer_coeffs(p);
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(Rat::zero());
        coeffs.remove(0);
    }
    for r in positive_rational_roots(&coeffs) {
        roots.push(r);
    }
    let mirrored: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    for r in positive_rational_roots(&mirrored) {
        roots.push(-r);
    }
    roots.sort();
    roots
}

fn primitive_integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in coeffs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// `q(x + 1)`.
fn taylor_shift_one(q: &[BigInt]) -> Vec<BigInt> {
    let mut a = q.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = a[j + 1].clone();
            a[j] += next;
        }
    }
    a
}

/// Number of roots of `q` in the open interval (0, 1), bounded above.
fn descartes_bound(q: &[BigInt]) -> usize {
    let reversed: Vec<BigInt> = q.iter().rev().cloned().collect();
    sign_variations(&taylor_shift_one(&reversed))
}

/// `2^n q(x / 2)`.
fn halve(q: &[BigInt]) -> Vec<BigInt> {
    let n = q.len() - 1;
    q.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

fn eval_int(q: &[BigInt], x: &Rat) -> Rat {
    q.iter().rev().fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
}

/// Rational roots in (0, inf) of a squarefree integer polynomial with
/// nonzero constant term.
fn positive_rational_roots(p: &[BigInt]) -> Vec<Rat> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = p[n].abs();
    // Cauchy bound: every root is below 1 + max |a_i / a_n| <= 2^k.
    let max_ratio = p[..n]
        .iter()
        .map(|c| Rat::new(c.abs(), lc.clone()))
        .max()
        .unwrap_or_else(Rat::zero);
    let bound = max_ratio + Rat::one();
    let mut k: u64 = 0;
    while Rat::from_integer(BigInt::one() << k) <= bound {
        k += 1;
    }
    let scale = BigInt::one() << k;
    let scaled: Vec<BigInt> = p.iter().enumerate().map(|(i, c)| c << (k as usize * i)).collect();
    // Isolating intervals in the scaled variable are (c / 2^d, (c+1) / 2^d).
    // A width below 1 / lc^2 (in the original variable) separates fractions
    // with denominators dividing lc.
    let lc_sq = &lc * &lc;
    let mut found = Vec::new();
    let mut stack = vec![(scaled, BigInt::zero(), 0u64)];
    while let Some((q, c, d)) = stack.pop() {
        let left = Rat::new(&c * &scale, BigInt::one() << d);
        let mut q = q;
        if q[0].is_zero() {
            found.push(left.clone());
            q.remove(0);
            if q.len() == 1 {
                continue;
            }
        }
        let v = descartes_bound(&q);
        if v == 0 {
            continue;
        }
        let width = Rat::new(scale.clone(), BigInt::one() << d);
        if v == 1 && width * Rat::from_integer(lc_sq.clone()) < Rat::one() {
            let right = Rat::new((&c + 1) * &scale, BigInt::one() << d);
            let candidate = simplest_between(&left, Some(&right));
            if eval_int(p, &candidate).is_zero() {
                found.push(candidate);
            }
            continue;
        }
        let lower = halve(&q);
        let upper = taylor_shift_one(&lower);
        let c2: BigInt = &c << 1;
        stack.push((upper, &c2 + 1, d + 1));
        stack.push((lower, c2, d + 1));
    }
    found.sort();
    found.dedup();
    found
}

/// The fraction with the smallest denominator in the open interval
/// `(lo, hi)`, `lo >= 0`, `hi = None` meaning infinity.
fn simplest_between(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let fl = lo.floor();
    let next = &fl + Rat::one();
    if hi.is_none_or(|h| &next < h) {
        return next;
    }
    let hi = hi.expect("bounded");
    let y_lo = (hi - &fl).recip();
    let frac = lo - &fl;
    let y_hi = (!frac.is_zero()).then(|| frac.recip());
    fl + simplest_between(&y_lo, y_hi.as_ref()).recip()
}
