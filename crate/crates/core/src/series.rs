//! Truncated power series in `q` over an exact field.
//!
//! A [`Series`] stores every coefficient below its order, so `f` stands for
//! `f_0 + f_1 q + ... + f_{N-1} q^{N-1} + O(q^N)`. Binary operations truncate
//! silently to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{Cyclotomic12, Field, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series<F> {
    coeffs: Vec<F>,
}

pub type RationalSeries = Series<Rational>;
pub type CyclotomicSeries = Series<Cyclotomic12>;

impl<F: Field> Series<F> {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients at or beyond `order`.
    pub fn from_coeffs(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order, F::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![F::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(F::one(), order)
    }

    pub fn constant(c: F, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c q^exp`, which is zero when `exp >= order`.
    pub fn monomial(c: F, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp < order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Series given by a coefficient rule `n -> f(n)` for `n < order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> F) -> Self {
        Series {
            coeffs: (0..order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Mutable view of the coefficients; the order cannot change.
    pub fn coeffs_mut(&mut self) -> &mut [F] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `q^n`; `None` beyond the known precision.
    pub fn coeff(&self, n: usize) -> Option<&F> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, c: F) {
        if n < self.order() {
            self.coeffs[n] = c;
        }
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Series {
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    /// `self += c * q^shift * other`, truncated to `self.order()`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &F, shift: usize) {
        if c.is_zero() || shift >= self.order() {
            return;
        }
        let n = (self.order() - shift).min(other.order());
        for (i, x) in other.coeffs[..n].iter().enumerate() {
            if !x.is_zero() {
                self.coeffs[i + shift] += &x.mul_ref(c);
            }
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        // iterate over the nonzero terms of the sparser factor
        let (sparse, dense) = if self.nonzero_count(order) <= other.nonzero_count(order) {
            (self, other)
        } else {
            (other, self)
        };
        for (i, c) in sparse.coeffs[..order].iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_shifted(dense, c, i);
            }
        }
        out
    }

    fn nonzero_count(&self, limit: usize) -> usize {
        self.coeffs[..limit.min(self.order())]
            .iter()
            .filter(|c| !c.is_zero())
            .count()
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn invert(&self) -> Result<Self> {
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NotInvertible(self.coeffs[0].to_string()))?;
        let support: Vec<usize> = (1..order).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let mut inv: Vec<F> = Vec::with_capacity(order);
        inv.push(c0_inv.clone());
        for n in 1..order {
            let mut acc = F::zero();
            for &i in support.iter().take_while(|&&i| i <= n) {
                acc += &self.coeffs[i].mul_ref(&inv[n - i]);
            }
            inv.push(-acc.mul_ref(&c0_inv));
        }
        Ok(Series { coeffs: inv })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, inverting first for negative exponents.
    pub fn pow_int(&self, exp: i64) -> Result<Self> {
        let e = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::InvalidArgument(format!("exponent {exp} too large")))?;
        if exp < 0 {
            Ok(self.invert()?.pow(e))
        } else {
            Ok(self.pow(e))
        }
    }

    /// `f(q) -> f(q^ell)`, keeping the order.
    pub fn dilate(&self, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidArgument("dilation must be at least 1".into()));
        }
        let mut out = Self::zero(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            match n.checked_mul(ell) {
                Some(m) if m < self.order() => out.coeffs[m] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }

    /// Multiplication by `q^s`; the order grows by `s`.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut coeffs = vec![F::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Division by `q^s`; the order shrinks by `s`. Fails if a coefficient
    /// below `q^s` is nonzero.
    pub fn shift_down(&self, s: usize) -> Result<Self> {
        if let Some(v) = self.valuation().filter(|&v| v < s) {
            return Err(Error::InvalidArgument(format!(
                "cannot divide by q^{s}: coefficient of q^{v} is nonzero"
            )));
        }
        Ok(Series {
            coeffs: self.coeffs.iter().skip(s).cloned().collect(),
        })
    }

    /// First exponent below the common order where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Equality up to the common order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Series<G> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated infinite product `prod_{n >= 1} factor(n)`. Every factor
    /// must be `1 + O(q^n)`, so only `n < order` contribute.
    pub fn product_over_n(
        order: usize,
        mut factor: impl FnMut(usize) -> Result<Self>,
    ) -> Result<Self> {
        let mut acc = Self::one(order);
        for n in 1..order {
            let f = factor(n)?.truncate(order);
            if f.order() < order {
                return Err(Error::InvalidFactor {
                    n,
                    reason: format!("order {} below {order}", f.order()),
                });
            }
            if !f.coeffs[0].is_one() {
                return Err(Error::InvalidFactor {
                    n,
                    reason: format!("constant term {} is not 1", f.coeffs[0]),
                });
            }
            if let Some(i) = (1..n.min(order)).find(|&i| !f.coeffs[i].is_zero()) {
                return Err(Error::InvalidFactor {
                    n,
                    reason: format!("nonzero coefficient at q^{i} < q^{n}"),
                });
            }
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(js: &SeriesJson) -> Result<Self> {
        if js.coeffs.len() != js.order {
            return Err(Error::Parse(format!(
                "{} coefficients for order {}",
                js.coeffs.len(),
                js.order
            )));
        }
        let coeffs = js
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<F>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<F>>>()?;
        Ok(Series { coeffs })
    }

    /// `(n, coefficient)` rows for spreadsheet export.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

impl Series<Rational> {
    pub fn to_cyclotomic(&self) -> Series<Cyclotomic12> {
        self.map(|c| Cyclotomic12::rational(c.clone()))
    }

    /// `q^{rn} (1 + a q^n + q^{2n})^{-k}` expanded to the given order.
    pub fn denominator_term(a: &Rational, k: u32, r: u32, n: usize, order: usize) -> Result<Self> {
        if n == 0 || k == 0 || r == 0 {
            return Err(Error::InvalidArgument(
                "denominator_term needs n, k, r >= 1".into(),
            ));
        }
        let shift = (r as usize).saturating_mul(n);
        if shift >= order {
            return Ok(Self::zero(order));
        }
        let inner_order = (order - shift).div_ceil(n);
        let base = quadratic_power(a, -i64::from(k), inner_order)?;
        let mut out = Self::zero(order);
        for (i, c) in base.coeffs.iter().enumerate() {
            let e = shift + i * n;
            if e >= order {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        Ok(out)
    }
}

/// `(1 + a x + x^2)^k` as a series in `x`, for any integer `k`.
pub fn quadratic_power(a: &Rational, k: i64, order: usize) -> Result<Series<Rational>> {
    let base = Series::from_coeffs(vec![Rational::one(), a.clone(), Rational::one()], order);
    base.pow_int(k)
}

impl Series<Cyclotomic12> {
    /// Demotes to rational coefficients when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Series<Rational>> {
        self.coeffs
            .iter()
            .map(Cyclotomic12::to_rational)
            .collect::<Option<Vec<_>>>()
            .map(|coeffs| Series { coeffs })
    }
}

impl<F: Field> Add for &Series<F> {
    type Output = Series<F>;
    fn add(self, rhs: &Series<F>) -> Series<F> {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
    }
}

impl<F: Field> Sub for &Series<F> {
    type Output = Series<F>;
    fn sub(self, rhs: &Series<F>) -> Series<F> {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<F: Field> Neg for &Series<F> {
    type Output = Series<F>;
    fn neg(self) -> Series<F> {
        self.map(|c| -c.clone())
    }
}

impl<F: Field> Mul for &Series<F> {
    type Output = Series<F>;
    fn mul(self, rhs: &Series<F>) -> Series<F> {
        Series::mul(self, rhs)
    }
}

impl<F: Field> Add<&Series<F>> for Series<F> {
    type Output = Series<F>;
    fn add(self, rhs: &Series<F>) -> Series<F> {
        &self + rhs
    }
}

impl<F: Field> Sub<&Series<F>> for Series<F> {
    type Output = Series<F>;
    fn sub(self, rhs: &Series<F>) -> Series<F> {
        &self - rhs
    }
}

impl<F: Field> fmt::Display for Series<F> {
    /// `c0 + c1*q + c2*q^2 + ... + O(q^N)`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
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
            let var = if n == 1 {
                "q".to_string()
            } else {
                format!("q^{n}")
            };
            if n == 0 {
                write!(f, "{sep}{mag}")?;
            } else if parts.is_unit() {
                write!(f, "{sep}{var}")?;
            } else {
                write!(f, "{sep}{mag}*{var}")?;
            }
            first = false;
        }
        if first {
            write!(f, "O(q^{})", self.order())
        } else {
            write!(f, " + O(q^{})", self.order())
        }
    }
}

impl<F: Field> fmt::Debug for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form `{"order": N, "coeffs": ["c0", "c1", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}
