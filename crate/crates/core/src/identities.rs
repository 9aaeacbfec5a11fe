//! Truncated-series verification of identities satisfied by the `U` series:
//! limits as `t -> infinity`, the explicit expansions of the limit
//! products, the generating function in `x^2`, the triple product, the
//! exponential relation between `U_{t,k,r}` and `U_{nk,nr}`, the Eisenstein
//! decompositions, and congruences of the coefficients.
//!
//! Every check returns a [`Report`]; "verified" always means "equal to the
//! stated order", never a proof.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, CharacterName, Cyclotomic12, Polynomial, Rational};
use crate::decompose::{
    closed_form_constant_a0, closed_form_constant_a2, closed_form_constant_pm1,
    closed_form_top_coefficient, decompose_a0, decompose_a1, decompose_a2, decompose_am1,
    decompose_ukk, partial_fractions, stirling_transform, verify_expression, SymmetricNumerator,
};
use crate::eisenstein::{Generator, QmfExpression};
use crate::error::{Error, Result};
use crate::macmahon::{u_general_series, u_series, u_series_family};
use crate::quasishuffle::{exp_letter, isobaric_series, Letter, ShuffleSum, Word};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Counterexample,
}

/// Outcome of one check. `witness` is the first failing exponent or
/// argument; `first_difference` records where two series part ways when
/// agreement is only claimed up to `checked_through`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub checked_through: usize,
    pub status: Status,
    pub witness: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<usize>,
}

impl Report {
    pub fn verified(claim: impl Into<String>, checked_through: usize) -> Self {
        Report {
            claim: claim.into(),
            checked_through,
            status: Status::Verified,
            witness: None,
            first_difference: None,
        }
    }

    pub fn counterexample(
        claim: impl Into<String>,
        checked_through: usize,
        witness: usize,
    ) -> Self {
        Report {
            claim: claim.into(),
            checked_through,
            status: Status::Counterexample,
            witness: Some(witness),
            first_difference: None,
        }
    }

    /// Equality of two series through `q^{through}`.
    pub fn compare<F: crate::arith::Field>(
        claim: impl Into<String>,
        lhs: &Series<F>,
        rhs: &Series<F>,
        through: usize,
    ) -> Self {
        let first = lhs.first_difference(rhs);
        let mut rep = match first {
            Some(n) if n <= through => Report::counterexample(claim, through, n),
            _ => Report::verified(claim, through),
        };
        rep.first_difference = first;
        rep
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }

    /// Combines sub-checks of one claim: verified only if all are.
    fn all(claim: impl Into<String>, checked_through: usize, parts: &[Report]) -> Self {
        match parts.iter().find(|r| !r.passed()) {
            Some(bad) => Report::counterexample(
                format!("{} [failed: {}]", claim.into(), bad.claim),
                checked_through,
                bad.witness.unwrap_or(0),
            ),
            None => Report::verified(claim, checked_through),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Verified => write!(
                f,
                "PASS {} (verified through {})",
                self.claim, self.checked_through
            ),
            Status::Counterexample => write!(
                f,
                "FAIL {} (counterexample at {})",
                self.claim,
                self.witness.map_or("?".to_string(), |w| w.to_string())
            ),
        }
    }
}

/// Polynomial in `X` of degree at most `T` with coefficients in truncated
/// q-series of a common order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateTruncation {
    coeffs: Vec<Series<Rational>>,
    q_order: usize,
}

impl BivariateTruncation {
    pub fn new(coeffs: Vec<Series<Rational>>, q_order: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "need at least the X^0 coefficient".into(),
            ));
        }
        if let Some(bad) = coeffs.iter().find(|s| s.order() < q_order) {
            return Err(Error::InvalidArgument(format!(
                "coefficient of q-order {} below {q_order}",
                bad.order()
            )));
        }
        Ok(BivariateTruncation {
            coeffs: coeffs.into_iter().map(|s| s.truncate(q_order)).collect(),
            q_order,
        })
    }

    pub fn zero(x_order: usize, q_order: usize) -> Self {
        BivariateTruncation {
            coeffs: vec![Series::zero(q_order); x_order + 1],
            q_order,
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut z = Self::zero(x_order, q_order);
        z.coeffs[0] = Series::one(q_order);
        z
    }

    pub fn x_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn coeff(&self, j: usize) -> &Series<Rational> {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Series<Rational>] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.x_order().min(other.x_order());
        BivariateTruncation {
            coeffs: (0..=t)
                .map(|j| &self.coeffs[j] + &other.coeffs[j])
                .collect(),
            q_order: self.q_order.min(other.q_order),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.x_order().min(other.x_order());
        let n = self.q_order.min(other.q_order);
        let mut out = Self::zero(t, n);
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &a.mul(b);
                }
            }
        }
        out
    }

    /// `exp(self)` for `self` without `X^0` term, from `j E_j = sum_i i L_i E_{j-i}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "exp needs a vanishing X^0 coefficient".into(),
            ));
        }
        let t = self.x_order();
        let mut e: Vec<Series<Rational>> = vec![Series::one(self.q_order)];
        for j in 1..=t {
            let mut acc = Series::zero(self.q_order);
            for i in 1..=j {
                acc.add_scaled_shifted(
                    &self.coeffs[i].mul(&e[j - i]),
                    &Rational::from(i as i64),
                    0,
                );
            }
            e.push(acc.scale(&Rational::new(1, j as i64).expect("j >= 1")));
        }
        Ok(BivariateTruncation {
            coeffs: e,
            q_order: self.q_order,
        })
    }

    /// First `(X-exponent, q-exponent)` where the two objects differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find_map(|(j, (a, b))| a.first_difference(b).map(|n| (j, n)))
    }
}

fn ri(n: i64) -> Rational {
    Rational::from(n)
}

fn one_plus(s: &Series<Rational>) -> Series<Rational> {
    &Series::one(s.order()) + s
}

fn q_power(n: usize, order: usize) -> Series<Rational> {
    Series::monomial(Rational::one(), n, order)
}

/// `prod_{n >= 1} 1 / ((1 - q^{rn}) (1 + a q^n + q^{2n})^k)`.
pub fn limit_product(k: u32, r: u32, a: &Rational, order: usize) -> Result<Series<Rational>> {
    let base = crate::series::quadratic_power(a, i64::from(k), order)?;
    Series::product_over_n(order, |n| {
        let one_minus = &Series::one(order) - &q_power(r as usize * n, order);
        one_minus.mul(&base.dilate(n)?).invert()
    })
}

/// Checks `q^{-r t(t+1)/2} U_{t,k,r}(a; q) = limit_product + O(q^{t+1})`.
pub fn limit_check(t: usize, k: u32, r: u32, a: &Rational, extra: usize) -> Result<Report> {
    let shift = r as usize * t * (t + 1) / 2;
    let order = t + 1 + extra;
    let lhs = u_series(t, k, r, a, shift + order)?.shift_down(shift)?;
    let rhs = limit_product(k, r, a, order)?;
    let claim = format!("q^-{shift} U_{{{t},{k},{r}}}({a}) = prod 1/((1-q^{{{r}n}})(1+({a})q^n+q^{{2n}})^{k}) + O(q^{})", t + 1);
    Ok(Report::compare(claim, &lhs, &rhs, t))
}

/// `1 + Q(q^n)` as a series of the given order.
fn one_plus_q_at(qpoly: &Polynomial<Rational>, n: usize, order: usize) -> Series<Rational> {
    let mut s: Series<Rational> = Series::one(order);
    for (i, c) in qpoly.coeffs().iter().enumerate().skip(1) {
        if i * n < order {
            let mut v = s.coeff(i * n).expect("below order").clone();
            v += c;
            s.set_coeff(i * n, v);
        }
    }
    s
}

/// Limit of `q^{-sum P(j)} U_{t,k}(P, Q; q)`: with `P = alpha x` it is
/// `prod 1/((1 - q^{alpha n})(1 + Q(q^n))^k)`, otherwise `prod (1 + Q(q^n))^{-k}`.
pub fn general_limit_product(
    p: &Polynomial<Rational>,
    qpoly: &Polynomial<Rational>,
    k: i64,
    order: usize,
) -> Result<Series<Rational>> {
    let linear = p.degree() == Some(1);
    let alpha = p
        .coeff(1)
        .to_i64()
        .and_then(|a| usize::try_from(a).ok())
        .unwrap_or(0);
    Series::product_over_n(order, |n| {
        let f = one_plus_q_at(qpoly, n, order).pow_int(-k)?;
        if linear {
            let one_minus = &Series::one(order) - &q_power(alpha * n, order);
            Ok(f.mul(&one_minus.invert()?))
        } else {
            Ok(f)
        }
    })
}

pub fn general_limit_check(
    p: &Polynomial<Rational>,
    qpoly: &Polynomial<Rational>,
    t: usize,
    k: i64,
    extra: usize,
) -> Result<Report> {
    let shift = (1..=t).fold(0usize, |s, j| s.saturating_add(p.eval_natural(j)));
    let order = t + 1 + extra;
    let lhs = u_general_series(p, qpoly, t, k, shift + order)?.shift_down(shift)?;
    let rhs = general_limit_product(p, qpoly, k, order)?;
    let claim = format!(
        "q^-{shift} U_{{{t},{k}}}(P = {p}, Q = {qpoly}) -> limit product + O(q^{})",
        t + 1
    );
    Ok(Report::compare(claim, &lhs, &rhs, t))
}

/// `sum_gamma C(m, gamma) C(m - gamma, floor((m - gamma - t)/2)) (-a)^gamma`.
pub fn explicit_weight(a: &Rational, m: usize, t: usize) -> Rational {
    if m < t {
        return Rational::zero();
    }
    let neg_a = -a.clone();
    (0..=m - t)
        .map(|g| {
            let (m, g, t) = (m as i64, g as i64, t as i64);
            let c = binomial(m, g) * binomial(m - g, Integer::div_floor(&(m - g - t), &2));
            Rational::from(c) * neg_a.pow(g as i32)
        })
        .sum()
}

/// `C(2m + 1, m + t + 1)`, the weight for `a = -2`.
pub fn three_colour_weight(m: usize, t: usize) -> Rational {
    Rational::from(binomial(2 * m as i64 + 1, (m + t + 1) as i64))
}

/// Least `M` with `(M+1)(M+2)/2 > N + t(t+1)/2`.
pub fn explicit_sum_bound(t: usize, order: usize) -> usize {
    let target = order + t * (t + 1) / 2;
    (0..)
        .find(|m| (m + 1) * (m + 2) / 2 > target)
        .expect("unbounded search")
}

/// Right side `q^{-t(t+1)/2} sum_{m=t}^{M} U_m(a; q) w(m)`, truncated to `order`.
pub fn explicit_sum(
    a: &Rational,
    t: usize,
    order: usize,
    m_max: usize,
    weight: impl Fn(usize) -> Rational,
) -> Result<Series<Rational>> {
    let shift = t * (t + 1) / 2;
    let family = u_series_family(m_max, 1, 1, a, order + shift)?;
    let mut acc = Series::zero(order + shift);
    for (m, u) in family.iter().enumerate().skip(t) {
        acc.add_scaled_shifted(u, &weight(m), 0);
    }
    acc.shift_down(shift)
}

/// Exact expansion of `prod 1/((1 - q^n)(1 + a q^n + q^{2n}))` in the `U_m`.
pub fn explicit_identity_check(a: &Rational, t: usize, order: usize) -> Result<Report> {
    let m_max = explicit_sum_bound(t, order);
    let rhs = explicit_sum(a, t, order, m_max, |m| explicit_weight(a, m, t))?;
    let lhs = limit_product(1, 1, a, order)?;
    let claim = format!(
        "prod 1/((1-q^n)(1+({a})q^n+q^{{2n}})) = q^-{} sum_{{m={t}}}^{{{m_max}}} w(m) U_m({a})",
        t * (t + 1) / 2
    );
    Ok(Report::compare(claim, &lhs, &rhs, order.saturating_sub(1)))
}

/// The truncated sum does not change when one more `m` is included.
pub fn explicit_tail_vanishes(a: &Rational, t: usize, order: usize) -> Result<bool> {
    let m_max = explicit_sum_bound(t, order);
    let w = |m| explicit_weight(a, m, t);
    Ok(explicit_sum(a, t, order, m_max, w)? == explicit_sum(a, t, order, m_max + 1, w)?)
}

/// For `a = -2`: the weights equal `C(2m+1, m+t+1)` and the sum is
/// `1/(q;q)^3`.
pub fn three_colour_check(t: usize, order: usize) -> Result<Report> {
    let a = ri(-2);
    let m_max = explicit_sum_bound(t, order);
    let claim = format!(
        "1/(q;q)^3 = q^-{} sum_m C(2m+1, m+{}) U_m",
        t * (t + 1) / 2,
        t + 1
    );
    if let Some(m) = (t..=m_max).find(|&m| explicit_weight(&a, m, t) != three_colour_weight(m, t)) {
        return Ok(Report::counterexample(claim, m_max, m));
    }
    let rhs = explicit_sum(&a, t, order, m_max, |m| three_colour_weight(m, t))?;
    let poch = Series::product_over_n(order, |n| Ok(&Series::one(order) - &q_power(n, order)))?;
    let lhs = poch.pow(3).invert()?;
    Ok(Report::compare(claim, &lhs, &rhs, order.saturating_sub(1)))
}

/// `C(2m+1, m+t+1) = sum_gamma C(m, gamma) C(m-gamma, floor((m-gamma-t)/2)) 2^gamma`
/// for `0 <= t <= min(m, t_max)`, `m <= m_max`; the witness is the first failing `m`.
pub fn binomial_identity_check(m_max: usize, t_max: usize) -> Report {
    let claim =
        format!("C(2m+1, m+t+1) = sum_g C(m,g) C(m-g, floor((m-g-t)/2)) 2^g for t <= m <= {m_max}");
    for m in 0..=m_max {
        for t in 0..=m.min(t_max) {
            if explicit_weight(&ri(-2), m, t) != three_colour_weight(m, t) {
                return Report::counterexample(claim, m_max, m);
            }
        }
    }
    Report::verified(claim, m_max)
}

/// `sum_{m <= T} U_m(a; q) y^m` against `prod_n (1 + y q^n / (1 + a q^n + q^{2n}))`
/// with `y = x^2`.
pub fn generating_function_check(a: &Rational, x_order: usize, order: usize) -> Result<Report> {
    let lhs = BivariateTruncation::new(u_series_family(x_order, 1, 1, a, order)?, order)?;
    let inv = crate::series::quadratic_power(a, -1, order)?;
    let mut rhs = BivariateTruncation::one(x_order, order);
    for n in 1..order {
        let mut factor = BivariateTruncation::one(x_order, order);
        if x_order >= 1 {
            factor.coeffs[1] = inv.dilate(n)?.shift_up(n).truncate(order);
        }
        rhs = rhs.mul(&factor);
    }
    let claim = format!(
        "sum_m U_m({a}) x^{{2m}} = prod_n (1 + x^2 q^n/(1+({a})q^n+q^{{2n}})) to x^{}",
        2 * x_order
    );
    Ok(match lhs.first_difference(&rhs) {
        None => Report::verified(claim, order - 1),
        Some((_, n)) => Report::counterexample(claim, order - 1, n),
    })
}

/// Laurent polynomial in `z` over truncated series, with exponents from `offset`.
#[derive(Clone)]
struct Laurent {
    offset: i64,
    coeffs: Vec<Series<Rational>>,
}

impl Laurent {
    fn get(&self, e: i64) -> Option<&Series<Rational>> {
        usize::try_from(e - self.offset)
            .ok()
            .and_then(|i| self.coeffs.get(i))
    }

    fn mul(&self, other: &Laurent, order: usize) -> Laurent {
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Series::zero(order); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &a.mul(b);
                }
            }
        }
        Laurent {
            offset: self.offset + other.offset,
            coeffs,
        }
    }
}

/// `sum_n q^{n(n+1)/2} z^n = (1 + z^{-1}) (q;q)_inf prod_n (1 + z^{-1} q^n)(1 + z q^n)`
/// compared for `|z-exponent| <= z_range` to q-order `order`.
pub fn jacobi_triple_product_check(order: usize, z_range: usize) -> Result<Report> {
    let one = Series::one(order);
    let poch = Series::product_over_n(order, |n| Ok(&one - &q_power(n, order)))?;
    let mut rhs = Laurent {
        offset: -1,
        coeffs: vec![poch.clone(), poch],
    };
    for n in 1..order {
        let qn = q_power(n, order);
        let factor = Laurent {
            offset: -1,
            coeffs: vec![qn.clone(), one_plus(&qn.mul(&qn)), qn],
        };
        rhs = rhs.mul(&factor, order);
        // exponents beyond q-degree bounds carry only zero series
        let first = rhs.coeffs.iter().position(|s| !s.is_zero()).unwrap_or(0);
        let last = rhs.coeffs.iter().rposition(|s| !s.is_zero()).unwrap_or(0);
        rhs = Laurent {
            offset: rhs.offset + first as i64,
            coeffs: rhs.coeffs[first..=last].to_vec(),
        };
    }
    let claim = format!("Jacobi triple product for |z exponent| <= {z_range}");
    let zr = z_range as i64;
    for e in -zr..=zr {
        let mut lhs = Series::zero(order);
        let tri = (e * (e + 1) / 2) as usize;
        if tri < order {
            lhs.set_coeff(tri, Rational::one());
        }
        let zero = Series::zero(order);
        let r = rhs.get(e).unwrap_or(&zero);
        if let Some(n) = lhs.first_difference(r) {
            return Ok(Report::counterexample(
                format!("{claim} (z^{e})"),
                order - 1,
                n,
            ));
        }
    }
    Ok(Report::verified(claim, order - 1))
}

/// `M_{t,k,r}(a; step * n + residue) = 0 mod modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub t: usize,
    pub k: u32,
    pub r: u32,
    pub a: i64,
    pub modulus: u64,
    pub step: usize,
    pub residue: usize,
}

impl CongruenceClaim {
    pub fn new(
        t: usize,
        k: u32,
        r: u32,
        a: i64,
        modulus: u64,
        step: usize,
        residue: usize,
    ) -> Result<Self> {
        if k == 0 || r == 0 || t == 0 {
            return Err(Error::InvalidArgument("t, k, r must be positive".into()));
        }
        if modulus == 0 || step == 0 {
            return Err(Error::InvalidArgument(
                "modulus and step must be positive".into(),
            ));
        }
        if residue >= step {
            return Err(Error::InvalidArgument(format!(
                "residue {residue} must be below step {step}"
            )));
        }
        Ok(CongruenceClaim {
            t,
            k,
            r,
            a,
            modulus,
            step,
            residue,
        })
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_{{{},{},{}}}({}; {}n+{}) = 0 mod {}",
            self.t, self.k, self.r, self.a, self.step, self.residue, self.modulus
        )
    }
}

fn scan_series(c: &CongruenceClaim, s: &Series<Rational>, n_max: usize) -> Report {
    let m = BigInt::from(c.modulus);
    for arg in (c.residue..=n_max).step_by(c.step) {
        let v = s.coeff(arg).expect("order n_max + 1");
        let ok = v.to_integer().is_some_and(|v| (v % &m).is_zero());
        if !ok {
            return Report::counterexample(c.to_string(), n_max, arg);
        }
    }
    Report::verified(c.to_string(), n_max)
}

/// Checks the congruence for every argument up to `n_max`; the witness is
/// the first failing argument.
pub fn congruence_scan(c: &CongruenceClaim, n_max: usize) -> Result<Report> {
    let s = u_series(c.t, c.k, c.r, &ri(c.a), n_max + 1)?;
    Ok(scan_series(c, &s, n_max))
}

/// Scans several claims, sharing one family computation per `(k, r, a)`.
pub fn congruence_scan_all(claims: &[CongruenceClaim], n_max: usize) -> Result<Vec<Report>> {
    let mut out = Vec::with_capacity(claims.len());
    let mut cache = HashMap::new();
    for c in claims {
        let key = (c.k, c.r, c.a);
        if let Entry::Vacant(slot) = cache.entry(key) {
            let t_max = claims
                .iter()
                .filter(|d| (d.k, d.r, d.a) == key)
                .map(|d| d.t)
                .max()
                .unwrap_or(c.t);
            slot.insert(u_series_family(t_max, c.k, c.r, &ri(c.a), n_max + 1)?);
        }
        out.push(scan_series(c, &cache[&key][c.t], n_max));
    }
    Ok(out)
}

/// The experimentally observed congruences, with the two `t`-families
/// expanded for `t = 3m, 3m + 2`, `m = 1, 2, 3`.
pub fn listed_congruences() -> Vec<CongruenceClaim> {
    let mut out = Vec::new();
    let ts = [3usize, 5, 6, 8, 9, 11];
    for a in [1, -2] {
        for &t in &ts {
            out.push(CongruenceClaim {
                t,
                k: 2,
                r: 2,
                a,
                modulus: 3,
                step: 3,
                residue: 2,
            });
        }
    }
    out.push(CongruenceClaim {
        t: 5,
        k: 2,
        r: 2,
        a: -2,
        modulus: 3,
        step: 3,
        residue: 2,
    });
    out.push(CongruenceClaim {
        t: 2,
        k: 1,
        r: 1,
        a: 1,
        modulus: 4,
        step: 4,
        residue: 1,
    });
    out.push(CongruenceClaim {
        t: 2,
        k: 1,
        r: 1,
        a: -1,
        modulus: 4,
        step: 4,
        residue: 1,
    });
    out.push(CongruenceClaim {
        t: 2,
        k: 1,
        r: 1,
        a: 1,
        modulus: 8,
        step: 8,
        residue: 5,
    });
    out.push(CongruenceClaim {
        t: 1,
        k: 3,
        r: 1,
        a: -2,
        modulus: 3,
        step: 9,
        residue: 4,
    });
    out.push(CongruenceClaim {
        t: 1,
        k: 3,
        r: 1,
        a: -2,
        modulus: 7,
        step: 7,
        residue: 2,
    });
    out.push(CongruenceClaim {
        t: 1,
        k: 3,
        r: 1,
        a: -2,
        modulus: 7,
        step: 8,
        residue: 4,
    });
    out
}

/// `exp(sum_n (-1)^{n+1}/n U_{nk,nr} X^n) = 1 + sum_j U_{j,k,r} X^j`, both in
/// the word algebra and as q-series.
pub fn shuffle_exp_check(
    k: u32,
    r: u32,
    a: &Rational,
    x_order: usize,
    order: usize,
) -> Result<Report> {
    let claim = format!("exp(sum (-1)^(n+1)/n U_{{{k}n,{r}n}}({a}) X^n) = sum_j U_{{j,{k},{r}}}({a}) X^j to X^{x_order}");
    let letter = Letter::new(k, r)?;
    let words = exp_letter(letter, x_order);
    if let Some(j) = (0..=x_order).find(|&j| words[j] != ShuffleSum::word(Word::repeat(letter, j)))
    {
        return Ok(Report::counterexample(
            format!("{claim} [word algebra]"),
            x_order,
            j,
        ));
    }
    let mut log = BivariateTruncation::zero(x_order, order);
    for n in 1..=x_order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let c = Rational::new(sign, n as i64).expect("n >= 1");
        log.coeffs[n] = u_series(1, k * n as u32, r * n as u32, a, order)?.scale(&c);
    }
    let lhs = log.exp()?;
    let rhs = BivariateTruncation::new(u_series_family(x_order, k, r, a, order)?, order)?;
    Ok(match lhs.first_difference(&rhs) {
        None => Report::verified(claim, order - 1),
        Some((_, n)) => Report::counterexample(claim, order - 1, n),
    })
}

/// `U_{t,k,k}(a)` rebuilt from the `U_{sk,sk}(a)` via the partition formula.
pub fn isobaric_check(t: u32, k: u32, a: &Rational, order: usize) -> Result<Report> {
    let lhs = u_series(t as usize, k, k, a, order)?;
    let rhs = isobaric_series(t, k, k, a, order)?;
    Ok(Report::compare(
        format!("U_{{{t},{k},{k}}}({a}) = isobaric polynomial in U_{{s{k},s{k}}}({a})"),
        &lhs,
        &rhs,
        order - 1,
    ))
}

/// `prod 1/((1-q^n)(1+q^{2n}))`, `prod 1/(1-q^{3n})`,
/// `prod (1+q^n)/((1+q^{3n})(1-q^n))` and `prod (1-q^n)/(1-q^{2n})^2`.
pub fn named_products(order: usize) -> Result<[(&'static str, Series<Rational>); 4]> {
    let one = Series::one(order);
    let qp = |n| q_power(n, order);
    let a = Series::product_over_n(order, |n| {
        (&one - &qp(n)).mul(&(&one + &qp(2 * n))).invert()
    })?;
    let b = Series::product_over_n(order, |n| (&one - &qp(3 * n)).invert())?;
    let c = Series::product_over_n(order, |n| {
        let den = (&one + &qp(3 * n)).mul(&(&one - &qp(n)));
        Ok((&one + &qp(n)).mul(&den.invert()?))
    })?;
    let d = Series::product_over_n(order, |n| {
        Ok((&one - &qp(n)).mul(&(&one - &qp(2 * n)).pow(2).invert()?))
    })?;
    Ok([("a", a), ("b", b), ("c", c), ("d", d)])
}

fn qc(n: i64, d: i64) -> Cyclotomic12 {
    Cyclotomic12::rational(Rational::new(n, d).expect("nonzero"))
}

fn gt(w: u32, l: u32) -> Generator {
    Generator::new(w, CharacterName::Trivial, l).expect("even weight")
}

fn g3(w: u32, l: u32) -> Generator {
    Generator::new(w, CharacterName::Chi3, l).expect("odd weight")
}

/// The four worked decompositions of `U_{2,2}(a; q)`.
pub fn worked_decompositions() -> Vec<(i64, QmfExpression)> {
    vec![
        (
            0,
            QmfExpression::new(qc(-1, 8), vec![(qc(1, 1), gt(2, 2)), (qc(-4, 1), gt(2, 4))]),
        ),
        (
            2,
            QmfExpression::new(
                qc(-1, 32),
                vec![
                    (qc(-1, 6), gt(4, 1)),
                    (qc(8, 3), gt(4, 2)),
                    (qc(1, 6), gt(2, 1)),
                    (qc(-2, 3), gt(2, 2)),
                ],
            ),
        ),
        (
            1,
            QmfExpression::new(
                qc(-1, 18),
                vec![
                    (qc(-3, 1), gt(2, 3)),
                    (qc(1, 3), gt(2, 1)),
                    (qc(-1, 3), g3(1, 1)),
                ],
            ),
        ),
        (
            -1,
            QmfExpression::new(
                qc(-1, 2),
                vec![
                    (qc(-12, 1), gt(2, 6)),
                    (qc(3, 1), gt(2, 3)),
                    (qc(4, 3), gt(2, 2)),
                    (qc(-1, 3), gt(2, 1)),
                    (qc(2, 3), g3(1, 2)),
                    (qc(1, 3), g3(1, 1)),
                ],
            ),
        ),
    ]
}

/// The isobaric identity for `t = 2` and the four worked decompositions,
/// each checked as a q-series identity to `order` and, for the
/// decompositions, against the computed expression.
pub fn example_reports(order: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let half = Rational::new(1, 2).expect("nonzero");
    let mut parts = Vec::new();
    for k in 1..=3u32 {
        for a in [-2i64, -1, 0, 1, 2] {
            let a = ri(a);
            let u1 = u_series(1, k, k, &a, order)?;
            let u2 = u_series(1, 2 * k, 2 * k, &a, order)?;
            let rhs = &u1.mul(&u1).scale(&half) - &u2.scale(&half);
            let lhs = u_series(2, k, k, &a, order)?;
            parts.push(Report::compare(
                format!("k={k}, a={a}"),
                &lhs,
                &rhs,
                order - 1,
            ));
        }
    }
    out.push(Report::all(
        "U_{2,k,k}(a) = U_{k,k}(a)^2/2 - U_{2k,2k}(a)/2 for k <= 3",
        order - 1,
        &parts,
    ));
    for (a, expr) in worked_decompositions() {
        let claim = format!("U_{{2,2}}({a}) = {expr}");
        let oracle = u_series(1, 2, 2, &ri(a), order)?;
        let rep = verify_expression(&expr, &oracle)?;
        let computed = decompose_ukk(a, 2)?;
        out.push(if !rep.equal {
            Report::counterexample(claim, order - 1, rep.first_discrepancy.unwrap_or(0))
        } else if computed != expr {
            Report::counterexample(format!("{claim} [computed: {computed}]"), order - 1, 0)
        } else {
            Report::verified(claim, order - 1)
        });
    }
    Ok(out)
}

fn family_report(
    claim: String,
    expr: &QmfExpression,
    oracle: &Series<Rational>,
    constant: &Rational,
    extra: Vec<Report>,
) -> Result<Report> {
    let order = oracle.order();
    let rep = verify_expression(expr, oracle)?;
    let mut parts = vec![if rep.equal {
        Report::verified("series", order - 1)
    } else {
        Report::counterexample("series", order - 1, rep.first_discrepancy.unwrap_or(0))
    }];
    parts.push(
        if *expr.constant() == Cyclotomic12::rational(constant.clone()) {
            Report::verified(format!("constant {constant}"), 0)
        } else {
            Report::counterexample(
                format!("constant {} vs closed form {constant}", expr.constant()),
                0,
                0,
            )
        },
    );
    parts.extend(extra);
    Ok(Report::all(claim, order - 1, &parts))
}

/// `U_{k,k}(0)`; odd `k` must avoid trivial-character generators.
pub fn a0_family_report(k: u32, order: usize) -> Result<Report> {
    let e = decompose_a0(k)?;
    let oracle = u_series(1, k, k, &ri(0), order)?;
    let mut extra = Vec::new();
    if k % 2 == 1 {
        let trivial = e
            .terms()
            .iter()
            .any(|(_, g)| g.character() == CharacterName::Trivial);
        extra.push(if trivial {
            Report::counterexample("no trivial-character generator", 0, 0)
        } else {
            Report::verified("no trivial-character generator", 0)
        });
    }
    family_report(
        format!("U_{{{k},{k}}}(0) = {e}"),
        &e,
        &oracle,
        &closed_form_constant_a0(k),
        extra,
    )
}

/// `U_{k,k}(2)`.
pub fn a2_family_report(k: u32, order: usize) -> Result<Report> {
    let e = decompose_a2(k)?;
    let oracle = u_series(1, k, k, &ri(2), order)?;
    family_report(
        format!("U_{{{k},{k}}}(2) = {e}"),
        &e,
        &oracle,
        &closed_form_constant_a2(k),
        Vec::new(),
    )
}

/// Numerators `x^k` and `x^r + x^{2k-r}` for `a = +-1`, `k = 1..k_max`.
pub fn pm1_family_reports(a: i64, k_max: u32, order: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let mut nums = vec![SymmetricNumerator::power(k)?];
        for r in 1..k {
            nums.push(SymmetricNumerator::symmetric_pair(k, r)?);
        }
        for sn in nums {
            out.push(numerator_report(&sn, a, order)?);
        }
    }
    Ok(out)
}

/// Verification of one numerator for `a = +-1`: series, constant, top coefficient.
pub fn numerator_report(sn: &SymmetricNumerator, a: i64, order: usize) -> Result<Report> {
    let e = if a == 1 {
        decompose_a1(sn)?
    } else {
        decompose_am1(sn)?
    };
    let oracle = sn.oracle_series(&ri(a), order)?;
    let pf = partial_fractions(sn, a)?;
    let top = stirling_transform(&pf).pop().expect("k >= 1");
    let closed = closed_form_top_coefficient(sn, a)?;
    let extra = vec![if top == closed {
        Report::verified("top coefficient", 0)
    } else {
        Report::counterexample(format!("top coefficient {top} vs {closed}"), 0, 0)
    }];
    let claim = format!(
        "sum_n Q(q^n)/(1+({a})q^n+q^{{2n}})^{} with Q = {} equals {e}",
        sn.k(),
        sn.polynomial()
    );
    family_report(claim, &e, &oracle, &closed_form_constant_pm1(sn, a)?, extra)
}

/// Whether `v` is an integer divisible by `m`.
pub fn divisible(v: &Rational, m: u64) -> bool {
    v.to_integer()
        .is_some_and(|v| (v.abs() % BigInt::from(m)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&c| ri(c)).collect())
    }

    fn ints(s: &Series<Rational>) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn limit_examples() {
        let rep = limit_check(3, 1, 1, &ri(-2), 3).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.first_difference.is_some_and(|n| n > 3));
        let rep = limit_check(2, 1, 1, &ri(0), 2).unwrap();
        assert!(rep.passed());
        assert_eq!(ints(&limit_product(1, 1, &ri(0), 4).unwrap()), [1, 1, 1, 2]);
        assert!(limit_check(1, 2, 2, &ri(1), 2).unwrap().passed());
    }

    #[test]
    fn limit_disagreement_is_reported() {
        // comparing with the wrong product fails at q^1
        let lhs = u_series(2, 1, 1, &ri(0), 10)
            .unwrap()
            .shift_down(3)
            .unwrap();
        let wrong = limit_product(1, 1, &ri(1), 7).unwrap();
        let rep = Report::compare("wrong", &lhs, &wrong, 2);
        assert_eq!(rep.status, Status::Counterexample);
        assert_eq!(rep.witness, Some(1));
    }

    #[test]
    fn general_limit_examples() {
        let mac = general_limit_check(&poly(&[0, 1]), &poly(&[0, -2, 1]), 3, 1, 2).unwrap();
        assert!(mac.passed());
        assert_eq!(
            general_limit_product(&poly(&[0, 1]), &poly(&[0, -2, 1]), 1, 12).unwrap(),
            limit_product(1, 1, &ri(-2), 12).unwrap()
        );
        assert!(
            general_limit_check(&poly(&[0, 0, 1]), &poly(&[0, 1]), 3, 1, 2)
                .unwrap()
                .passed()
        );
        assert!(
            general_limit_check(&poly(&[0, 2]), &poly(&[0, 1, 0, 1]), 2, 2, 2)
                .unwrap()
                .passed()
        );
        assert!(general_limit_check(&poly(&[1, 1]), &poly(&[0, 1]), 2, 2, 2).is_err());
    }

    #[test]
    fn explicit_examples() {
        assert!(explicit_identity_check(&ri(-2), 1, 25).unwrap().passed());
        assert!(explicit_identity_check(&ri(0), 2, 20).unwrap().passed());
        assert!(explicit_identity_check(&ri(1), 3, 20).unwrap().passed());
        assert!(three_colour_check(2, 20).unwrap().passed());
        assert!(explicit_tail_vanishes(&ri(1), 2, 20).unwrap());
        assert_eq!(explicit_sum_bound(1, 25), 6);
    }

    #[test]
    fn binomial_identity() {
        assert_eq!(three_colour_weight(3, 1), ri(21));
        assert_eq!(explicit_weight(&ri(-2), 3, 1), ri(21));
        for m in 0..6 {
            assert_eq!(explicit_weight(&ri(-2), m, m), ri(1));
        }
        assert!(binomial_identity_check(12, 12).passed());
    }

    #[test]
    fn generating_function_examples() {
        assert!(generating_function_check(&ri(-2), 3, 15).unwrap().passed());
        assert!(generating_function_check(&ri(1), 4, 12).unwrap().passed());
    }

    #[test]
    fn bivariate_exp_log() {
        // exp(X) = sum X^j / j!
        let mut x = BivariateTruncation::zero(5, 3);
        x.coeffs[1] = Series::one(3);
        let e = x.exp().unwrap();
        let fact = [1, 1, 2, 6, 24, 120];
        for (j, f) in fact.iter().enumerate() {
            assert_eq!(
                e.coeff(j),
                &Series::constant(Rational::new(1, *f).unwrap(), 3)
            );
        }
        assert!(BivariateTruncation::one(2, 3).exp().is_err());
    }

    #[test]
    fn jtp() {
        assert!(jacobi_triple_product_check(20, 5).unwrap().passed());
        assert!(jacobi_triple_product_check(8, 2).unwrap().passed());
    }

    #[test]
    fn congruence_examples() {
        let c = CongruenceClaim::new(2, 1, 1, 1, 4, 4, 1).unwrap();
        assert!(congruence_scan(&c, 300).unwrap().passed());
        let c = CongruenceClaim::new(1, 3, 1, -2, 3, 9, 4).unwrap();
        assert!(congruence_scan(&c, 300).unwrap().passed());
        let c = CongruenceClaim::new(5, 2, 2, -2, 3, 3, 2).unwrap();
        assert!(congruence_scan(&c, 200).unwrap().passed());
        // a false claim yields its first witness
        let bad = CongruenceClaim::new(1, 1, 1, -2, 2, 1, 0).unwrap();
        let rep = congruence_scan(&bad, 20).unwrap();
        assert_eq!(rep.witness, Some(1));
        assert!(CongruenceClaim::new(2, 1, 1, 1, 8, 8, 9).is_err());
    }

    #[test]
    fn shuffle_exp_small() {
        assert!(shuffle_exp_check(2, 1, &ri(-1), 4, 25).unwrap().passed());
    }

    #[test]
    fn isobaric_small() {
        assert!(isobaric_check(3, 2, &ri(2), 30).unwrap().passed());
    }

    #[test]
    fn named_product_values() {
        let [(_, a), (_, b), (_, c), (_, d)] = named_products(101).unwrap();
        assert_eq!(ints(&a)[..9], [1, 1, 1, 2, 3, 4, 5, 7, 10]);
        assert_eq!(ints(&c)[..8], [1, 2, 4, 7, 12, 20, 32, 50]);
        assert_eq!(ints(&d)[..10], [1, -1, 1, -2, 3, -4, 5, -7, 10, -13]);
        let b3: Vec<i64> = (0..9)
            .map(|i| b.coeffs()[3 * i].to_i64().unwrap())
            .collect();
        assert_eq!(b3, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
        for n in 0..101 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(d.coeffs()[n], a.coeffs()[n].clone() * ri(sign));
        }
    }

    #[test]
    fn example_suite() {
        let reps = example_reports(40).unwrap();
        assert_eq!(reps.len(), 5);
        for r in reps {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn report_json() {
        let r = Report::counterexample("x", 10, 4);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(
            js,
            r#"{"claim":"x","checked_through":10,"status":"counterexample","witness":4}"#
        );
        let v = serde_json::to_string(&Report::verified("y", 3)).unwrap();
        assert_eq!(
            v,
            r#"{"claim":"y","checked_through":3,"status":"verified","witness":null}"#
        );
    }

    #[test]
    fn divisibility() {
        assert!(divisible(&ri(-9), 3));
        assert!(!divisible(&Rational::new(3, 2).unwrap(), 3));
    }
}
