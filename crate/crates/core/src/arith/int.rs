use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::traits::{Domain, Euclidean, Ring};

impl Domain for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn one() -> Self {
        <BigInt as One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return if Zero::is_zero(self) { Some(<BigInt as Zero>::zero()) } else { None };
        }
        let (q, r) = Integer::div_rem(self, other);
        Zero::is_zero(&r).then_some(q)
    }

    fn canonical(&self) -> Self {
        self.abs()
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Ring for BigInt {
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

impl Euclidean for BigInt {
    type Size = num_bigint::BigUint;

    fn size(&self) -> Self::Size {
        self.magnitude().clone()
    }

    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        // Floor division keeps |r| < |d|, which is all the SNF loop needs.
        self.div_mod_floor(divisor)
    }

    fn normalizing_unit(&self) -> Self {
        match self.sign() {
            Sign::Minus => -<BigInt as One>::one(),
            _ => <BigInt as One>::one(),
        }
    }

    fn unit_inverse(&self) -> Self {
        self.clone()
    }
}
