use std::fmt;

/// An integral domain with gcds, canonical associates and exact division.
///
/// Ideals are compared through [`Domain::canonical`]: two elements generate
/// the same principal ideal exactly when their canonical forms are equal.
pub trait Domain: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    /// Canonical gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Option<Self>;
    /// The canonical associate (monic, positive, or constant one).
    fn canonical(&self) -> Self;
    fn is_unit(&self) -> bool;

    /// Canonical lcm; zero if either argument is zero.
    fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.div_exact(&g)
            .expect("gcd divides its argument")
            .mul(other)
            .canonical()
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    fn associate(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

/// A commutative ring with the additive structure needed for matrices.
pub trait Ring: Domain {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// A Euclidean domain: division with remainder and a size that strictly
/// drops along remainder sequences.
pub trait Euclidean: Ring {
    type Size: Ord + Clone + fmt::Debug;

    /// Euclidean size; only meaningful for nonzero elements.
    fn size(&self) -> Self::Size;
    fn div_rem(&self, divisor: &Self) -> (Self, Self);
    /// A unit `u` such that `u * self` is canonical. One for zero.
    fn normalizing_unit(&self) -> Self;
    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;
}
