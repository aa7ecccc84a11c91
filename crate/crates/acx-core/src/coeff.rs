//! Coefficient abstraction shared by graded elements.
//!
//! The two instances are [`Rational`] (plain exact numbers) and
//! [`crate::symbolic::Expr`] (polynomials in integer unknowns such as the
//! `a`, `b` appearing in symbolic total Chern classes).

use crate::rational::Rational;
use std::fmt;

pub trait Coefficient:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_rational(&self, r: &Rational) -> Self;
    /// `Some` when the coefficient is a plain rational constant.
    fn as_rational(&self) -> Option<&Rational>;
    /// Display hint: whether the printed form needs parentheses inside a term.
    fn needs_parens(&self) -> bool {
        false
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
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
    fn neg(&self) -> Self {
        -self
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }
}
