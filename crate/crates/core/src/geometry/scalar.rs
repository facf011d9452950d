use std::fmt::Debug;

use num_traits::Zero;

use crate::exactnum::powerproduct::Radical;
use crate::exactnum::rational::Rational;

/// Exact field-like values the curvature routines compute with.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// `None` for zero, or when the representation cannot invert the value.
    fn recip(&self) -> Option<Self>;
    fn to_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| num_traits::Inv::inv(self.clone()))
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for Radical {
    fn zero() -> Self {
        Radical::zero()
    }

    fn from_rational(q: &Rational) -> Self {
        Radical::from_rational(q)
    }

    fn add(&self, other: &Self) -> Self {
        Radical::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Radical::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Radical::mul(self, other)
    }

    fn is_zero(&self) -> bool {
        Radical::is_zero(self)
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            self.inv()
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        Radical::to_rational(self)
    }
}
