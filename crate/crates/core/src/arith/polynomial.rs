use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficient `i` multiplying `x^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has an empty
/// coefficient list and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: F, deg: usize) -> Self {
        let mut coeffs = vec![F::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `c0 + c1 x`.
    pub fn linear(c0: F, c1: F) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul_ref(x) + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[d].inverse().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); n - d + 1];
        for i in (0..=n - d).rev() {
            let c = rem[i + d].mul_ref(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c.mul_ref(dc);
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// The reversed polynomial `x^n p(1/x)` for a fixed `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Option<Self> {
        if self.degree().is_some_and(|d| d > n) {
            return None;
        }
        let mut coeffs = vec![F::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<Rational> {
    /// Evaluate in any field containing the rationals.
    pub fn eval_in<G: Field>(&self, x: &G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(), |acc, c| acc.mul_ref(x) + G::from_rational(c))
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn has_natural_coeffs(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Integer evaluation with saturation, for exponent polynomials with
    /// nonnegative integer coefficients.
    pub fn eval_natural(&self, n: usize) -> usize {
        let mut acc: usize = 0;
        for c in self.coeffs.iter().rev() {
            let c = c
                .to_i64()
                .and_then(|c| usize::try_from(c).ok())
                .unwrap_or(usize::MAX);
            acc = acc.saturating_mul(n).saturating_add(c);
        }
        acc
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &a.mul_ref(b);
            }
        }
        Polynomial::new(out)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let parts = c.term_parts();
            let sep = match (first, parts.negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mag = if parts.atomic {
                parts.magnitude.clone()
            } else {
                format!("({})", parts.magnitude)
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{sep}{mag}")?;
            } else if parts.is_unit() {
                write!(f, "{sep}{var}")?;
            } else {
                write!(f, "{sep}{mag}*{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
