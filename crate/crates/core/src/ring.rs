//! Coefficient-ring contract for the series engine.
//!
//! Series arithmetic is generic over a commutative ring with exact equality
//! that contains the rationals, so dividing by a nonzero integer is always
//! possible (through [`CoeffRing::scale`]). Exactly two instances exist:
//! [`Rational`] itself and [`crate::XPoly`], polynomials over the rationals.
//! The second instance is what lets the generating-function arguments run on
//! bivariate series represented as series-over-polynomials.

use crate::rational::Rational;

/// A commutative ring containing the rationals, with exact equality.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(a: &Self, b: &Self) -> Self;
    fn sub(a: &Self, b: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    fn neg(a: &Self) -> Self;
    /// Multiplication by an embedded rational scalar. This is what makes
    /// division by nonzero integers total, which the exp/log recurrences
    /// rely on.
    fn scale(a: &Self, q: &Rational) -> Self;
}

impl CoeffRing for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }

    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }

    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn neg(a: &Self) -> Self {
        -a
    }

    fn scale(a: &Self, q: &Rational) -> Self {
        a * q
    }
}
