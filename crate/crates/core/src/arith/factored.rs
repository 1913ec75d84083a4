use std::cmp::Ordering;

use num_traits::Zero;

use super::{rational_roots, Poly, Rat, Var};

/// A monic polynomial kept as its rational roots (with multiplicity)
/// times a monic residual free of rational roots.
///
/// Linear factors are irreducible and coprime to any residual, so gcd,
/// lcm and exact division act on the root multisets directly and only the
/// residuals need a Euclidean gcd. Shifts and multiplication by linear
/// factors never touch a residual's roots, which makes this the working
/// form of the graded engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    roots: Vec<(Rat, u32)>,
    /// Zero polynomial when the whole value is zero.
    residual: Poly,
}

impl Factored {
    pub fn zero() -> Factored {
        Factored { roots: Vec::new(), residual: Poly::zero() }
    }

    pub fn one() -> Factored {
        Factored { roots: Vec::new(), residual: Poly::one() }
    }

    pub fn from_poly(p: &Poly) -> Factored {
        if p.is_zero() {
            return Factored::zero();
        }
        let split = rational_roots(p);
        let mut roots: Vec<(Rat, u32)> = Vec::new();
        for r in split.roots {
            match roots.last_mut() {
                Some((last, m)) if *last == r => *m += 1,
                _ => roots.push((r, 1)),
            }
        }
        Factored { roots, residual: split.residual.with_var(Var::S) }
    }

    /// Monic `(s - root)`.
    pub fn linear(root: Rat) -> Factored {
        Factored { roots: vec![(root, 1)], residual: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty() && self.residual.is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin: u32 = self.roots.iter().map(|(_, m)| m).sum();
        Some(lin as usize + self.residual.degree().unwrap_or(0))
    }

    pub fn residual(&self) -> &Poly {
        &self.residual
    }

    /// Roots ascending, repeated by multiplicity.
    pub fn roots(&self) -> Vec<Rat> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m as usize))
            .collect()
    }

    pub fn distinct_roots(&self) -> impl Iterator<Item = &Rat> {
        self.roots.iter().map(|(r, _)| r)
    }

    pub fn to_poly(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        &Poly::from_roots(Var::S, &self.roots()) * &self.residual
    }

    fn merge(a: &[(Rat, u32)], b: &[(Rat, u32)], pick: impl Fn(u32, u32) -> u32) -> Vec<(Rat, u32)> {
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let (root, m) = match ord {
                Ordering::Less => {
                    i += 1;
                    (&a[i - 1].0, pick(a[i - 1].1, 0))
                }
                Ordering::Greater => {
                    j += 1;
                    (&b[j - 1].0, pick(0, b[j - 1].1))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (&a[i - 1].0, pick(a[i - 1].1, b[j - 1].1))
                }
            };
            if m > 0 {
                out.push((root.clone(), m));
            }
        }
        out
    }

    /// Monic gcd; the zero polynomial is the identity.
    pub fn gcd(&self, other: &Factored) -> Factored {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let roots = Factored::merge(&self.roots, &other.roots, u32::min);
        let residual = if self.residual.is_one() || other.residual.is_one() {
            Poly::one()
        } else {
            self.residual.gcd(&other.residual)
        };
        Factored { roots, residual }
    }

    pub fn lcm(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Factored::zero();
        }
        let roots = Factored::merge(&self.roots, &other.roots, u32::max);
        Factored { roots, residual: self.residual.lcm(&other.residual) }
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Factored::zero();
        }
        let roots = Factored::merge(&self.roots, &other.roots, |x, y| x + y);
        Factored { roots, residual: (&self.residual * &other.residual).monic() }
    }

    pub fn mul_linear(&self, root: Rat) -> Factored {
        self.mul(&Factored::linear(root))
    }

    /// `p(s + m)`: every root moves to `root - m`.
    pub fn shift(&self, m: &Rat) -> Factored {
        if self.is_zero() || m.is_zero() {
            return self.clone();
        }
        let roots = self.roots.iter().map(|(r, k)| (r - m, *k)).collect();
        let residual = if self.residual.is_constant() { self.residual.clone() } else { self.residual.shift(m) };
        Factored { roots, residual }
    }

    /// `self / divisor` when exact.
    pub fn div_exact(&self, divisor: &Factored) -> Option<Factored> {
        if divisor.is_zero() {
            return self.is_zero().then(Factored::zero);
        }
        if self.is_zero() {
            return Some(Factored::zero());
        }
        let mut roots = Vec::new();
        let mut j = 0;
        for (r, m) in &self.roots {
            let mut keep = *m;
            if j < divisor.roots.len() && divisor.roots[j].0 < *r {
                // a root of the divisor missing from self
                return None;
            }
            if j < divisor.roots.len() && divisor.roots[j].0 == *r {
                keep = m.checked_sub(divisor.roots[j].1)?;
                j += 1;
            }
            if keep > 0 {
                roots.push((r.clone(), keep));
            }
        }
        if j < divisor.roots.len() {
            return None;
        }
        let residual = self.residual.div_exact(&divisor.residual).ok()?;
        Some(Factored { roots, residual })
    }

    pub fn divides(&self, other: &Factored) -> bool {
        other.div_exact(self).is_some()
    }
}
