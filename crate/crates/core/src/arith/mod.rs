//! Exact number-theoretic primitives.
//!
//! Everything here is exact: arbitrary-precision rationals, the cyclotomic
//! field `Q(zeta_12)`, polynomials over either, Bernoulli numbers and
//! L-values at nonpositive integers, and the Stirling/Eulerian tables.

mod bernoulli;
mod character;
mod combinatorics;
mod cyclotomic;
mod polynomial;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

pub use bernoulli::{
    bernoulli, bernoulli_numbers, generalized_bernoulli, l_nonpositive, zeta_nonpositive,
};
pub use character::{CharacterName, DirichletCharacter};
pub use combinatorics::{
    binomial, eulerian_polynomial, factorial, stirling_first_unsigned,
    stirling_first_unsigned_table, stirling_second, stirling_second_table,
};
pub use cyclotomic::Cyclotomic12;
pub use polynomial::Polynomial;
pub use rational::Rational;

/// Coefficient field for series, polynomials and linear algebra.
///
/// Both implementors are fields of characteristic zero, so every nonzero
/// element has an inverse.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn mul_ref(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    /// Splits the element into a sign and an absolute textual form for
    /// printing as a series coefficient. The flag `atomic` is false when
    /// the form must be parenthesised before multiplying by `q^n`.
    fn term_parts(&self) -> TermParts;
}

/// Printing helper returned by [`Field::term_parts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermParts {
    pub negative: bool,
    pub magnitude: String,
    pub atomic: bool,
}

impl TermParts {
    pub fn is_unit(&self) -> bool {
        self.atomic && self.magnitude == "1"
    }
}
