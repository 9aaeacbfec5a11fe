use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Polynomial, Rational, TermParts};
use crate::error::{Error, Result};

/// Element `c0 + c1 z + c2 z^2 + c3 z^3` of `Q[z]/(z^4 - z^2 + 1) = Q(zeta_12)`,
/// with `z = exp(2 pi i / 12)`.
///
/// The power basis `1, z, z^2, z^3` makes the representation unique.
/// Useful embeddings: `zeta_3 = z^2 - 1`, `i = zeta_4 = z^3`,
/// `zeta_6 = z^2`, `i sqrt(3) = 2 z^2 - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic12 {
    c: [Rational; 4],
}

impl Cyclotomic12 {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Cyclotomic12 {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclotomic12 {
            c: c.map(Rational::from),
        }
    }

    pub fn rational(r: Rational) -> Self {
        Cyclotomic12::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    /// The generator `z = zeta_12`.
    pub fn zeta12() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn zeta3() -> Self {
        Self::from_ints([-1, 0, 1, 0])
    }

    pub fn zeta4() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    pub fn zeta6() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    /// `i sqrt(3) = 2 zeta_6 - 1`.
    pub fn i_sqrt3() -> Self {
        Self::from_ints([-1, 0, 2, 0])
    }

    /// Primitive `n`-th root of unity `exp(2 pi i / n)` for `n | 12`.
    pub fn root_of_unity(n: u32) -> Option<Self> {
        (n > 0 && 12 % n == 0).then(|| Self::zeta12().pow(i64::from(12 / n)))
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.c[0].clone())
    }

    /// Complex conjugation, `z -> z^-1 = z - z^3`.
    pub fn conj(&self) -> Self {
        // z^-1 = z - z^3, z^-2 = 1 - z^2, z^-3 = -z^3
        let [c0, c1, c2, c3] = &self.c;
        Cyclotomic12::new(c0 + c2, c1.clone(), -c2.clone(), -(c1 + c3))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic12 {
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    /// Integer power; negative exponents use the inverse (panics on zero).
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        acc
    }

    pub fn checked_inverse(&self) -> Result<Self> {
        self.inverse().ok_or(Error::DivisionByZero)
    }

    pub fn one() -> Self {
        <Self as Field>::one()
    }

    pub fn zero() -> Self {
        <Self as Field>::zero()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    fn modulus() -> Polynomial<Rational> {
        Polynomial::new([1, 0, -1, 0, 1].map(Rational::from).to_vec())
    }

    fn as_poly(&self) -> Polynomial<Rational> {
        Polynomial::new(self.c.to_vec())
    }

    fn from_poly(p: &Polynomial<Rational>) -> Self {
        let r = p.div_rem(&Self::modulus()).expect("nonzero modulus").1;
        Cyclotomic12 {
            c: [r.coeff(0), r.coeff(1), r.coeff(2), r.coeff(3)],
        }
    }

    fn fmt_terms(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (out.is_empty(), c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mag = c.abs();
            let var = match i {
                0 => "",
                1 => "z",
                2 => "z^2",
                _ => "z^3",
            };
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                var.to_string()
            } else {
                format!("{mag}*{var}")
            };
            out.push_str(sep);
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Field for Cyclotomic12 {
    fn zero() -> Self {
        Cyclotomic12::default()
    }

    fn one() -> Self {
        Self::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut prod: [Rational; 7] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        // z^d = z^(d-2) - z^(d-4) for d >= 4
        for d in (4..7).rev() {
            let top = std::mem::take(&mut prod[d]);
            if top.is_zero() {
                continue;
            }
            prod[d - 2] += &top;
            prod[d - 4] -= &top;
        }
        let [c0, c1, c2, c3, ..] = prod;
        Cyclotomic12 {
            c: [c0, c1, c2, c3],
        }
    }

    /// Extended Euclid in `Q[z]` against the (irreducible) defining polynomial.
    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        // invariant: s_i * self = r_i  (mod modulus)
        let (mut r0, mut r1) = (Self::modulus(), self.as_poly());
        let (mut s0, mut s1) = (Polynomial::<Rational>::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).ok()?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the (constant) gcd
        if r0.degree() != Some(0) {
            return None;
        }
        let g = r0.coeff(0).recip().ok()?;
        Some(Self::from_poly(&s0.scale(&g)))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn term_parts(&self) -> TermParts {
        if let Some(r) = self.to_rational() {
            return r.term_parts();
        }
        let nonzero: Vec<usize> = (0..4).filter(|&i| !self.c[i].is_zero()).collect();
        if let [i] = nonzero[..] {
            let negative = self.c[i].is_negative();
            let mag = if negative {
                -self.clone()
            } else {
                self.clone()
            };
            return TermParts {
                negative,
                magnitude: mag.fmt_terms(),
                atomic: true,
            };
        }
        TermParts {
            negative: false,
            magnitude: self.fmt_terms(),
            atomic: false,
        }
    }
}

impl fmt::Display for Cyclotomic12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_terms())
    }
}

impl fmt::Debug for Cyclotomic12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic12 {
    type Err = Error;

    /// Parses the `Display` form, e.g. `"1/3 - 2/3*z^2"`, `"z^3"`, `"-1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Q(zeta_12) element: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(&compact);
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms at '+'/'-' not following '/' or '^' or '*'
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'^' | b'*')
            {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut c: [Rational; 4] = Default::default();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, var) = match body.find('z') {
                None => (body, ""),
                Some(p) => {
                    let coef = body[..p].strip_suffix('*').unwrap_or(&body[..p]);
                    (coef, &body[p..])
                }
            };
            let power = match var {
                "" => 0,
                "z" => 1,
                _ => var
                    .strip_prefix("z^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .filter(|&e| e < 4)
                    .ok_or_else(bad)?,
            };
            let mut value = if coef.is_empty() {
                if var.is_empty() {
                    return Err(bad());
                }
                Rational::one()
            } else {
                coef.parse::<Rational>().map_err(|_| bad())?
            };
            if neg {
                value = -value;
            }
            c[power] += value;
        }
        Ok(Cyclotomic12 { c })
    }
}

impl Serialize for Cyclotomic12 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclotomic12 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for Cyclotomic12 {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add for Cyclotomic12 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Sub for Cyclotomic12 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl Mul for Cyclotomic12 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for Cyclotomic12 {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic12 {
            c: self.c.map(|x| -x),
        }
    }
}

impl AddAssign for Cyclotomic12 {
    fn add_assign(&mut self, rhs: Self) {
        *self += &rhs;
    }
}

impl<'a> AddAssign<&'a Cyclotomic12> for Cyclotomic12 {
    fn add_assign(&mut self, rhs: &'a Cyclotomic12) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl SubAssign for Cyclotomic12 {
    fn sub_assign(&mut self, rhs: Self) {
        *self -= &rhs;
    }
}

impl<'a> SubAssign<&'a Cyclotomic12> for Cyclotomic12 {
    fn sub_assign(&mut self, rhs: &'a Cyclotomic12) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}
