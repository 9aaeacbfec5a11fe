//! Eisenstein decompositions of `sum_n Q(q^n) / (1 + a q^n + q^{2n})^k` for
//! `a in {0, 2, 1, -1}`.
//!
//! For `a = 0, 2` the coefficients come from expanding binomial polynomials
//! in `m`. For `a = +-1` the rational function is split into partial
//! fractions over `Q(zeta_12)` at the roots `zeta^{-1}, zeta` of
//! `1 + a x + x^2` (`zeta = zeta_3` for `a = 1`, `zeta_6` for `a = -1`),
//! and the Stirling transform turns the pole orders into powers of `m`.
//!
//! The free constant of every expression is computed from the constant
//! terms of its generators, so that the q-expansion has no constant term;
//! the closed forms are exposed separately for comparison.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{
    factorial, stirling_first_unsigned_table, CharacterName, Cyclotomic12, Field, Polynomial,
    Rational,
};
use crate::eisenstein::{Generator, QmfExpression};
use crate::error::{Error, Result};
use crate::macmahon::u_series;
use crate::series::Series;

fn fact(n: usize) -> Rational {
    Rational::from(BigInt::from(factorial(n as u64)))
}

fn two_pow(e: u32) -> Rational {
    Rational::from(2).pow(e as i32)
}

/// `prod_i (m - root_i)` as a polynomial in `m`, scaled by `c`.
fn product_of_linears(
    roots: impl IntoIterator<Item = Rational>,
    c: Rational,
) -> Polynomial<Rational> {
    roots
        .into_iter()
        .fold(Polynomial::constant(c), |acc, root| {
            &acc * &Polynomial::linear(-root, Rational::one())
        })
}

/// `a_k(j)`, `j = 1..k/2`: coefficients of `m^{2j-1}` in
/// `(-1)^{k/2} C(m + k/2 - 1, k - 1)`.
pub fn a0_even_coeffs(k: u32) -> Result<Vec<Rational>> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "a_k(j) needs even k >= 2, got {k}"
        )));
    }
    let half = i64::from(k / 2);
    let sign = if half % 2 == 0 { 1 } else { -1 };
    // C(m + h - 1, k - 1) = prod_{i=0}^{k-2} (m + h - 1 - i) / (k-1)!
    let roots = (0..i64::from(k) - 1).map(|i| Rational::from(i + 1 - half));
    let poly = product_of_linears(roots, Rational::from(sign) / fact(k as usize - 1));
    debug_assert!(
        (0..=k as usize).step_by(2).all(|i| poly.coeff(i).is_zero()),
        "odd polynomial"
    );
    Ok((1..=k as usize / 2)
        .map(|j| poly.coeff(2 * j - 1))
        .collect())
}

/// `b_k(j)`, `j = 0..(k-1)/2`: coefficients of `m^{2j}` in
/// `(-1)^{(k-1)/2} C((m + k)/2 - 1, k - 1)`.
pub fn a0_odd_coeffs(k: u32) -> Result<Vec<Rational>> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "b_k(j) needs odd k, got {k}"
        )));
    }
    let sign = if ((k - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    // prod_{i=1}^{k-1} ((m + k)/2 - i) = 2^{1-k} prod_i (m + k - 2i)
    let roots = (1..i64::from(k)).map(|i| Rational::from(2 * i - i64::from(k)));
    let scale = Rational::from(sign) / (fact(k as usize - 1) * two_pow(k - 1));
    let poly = product_of_linears(roots, scale);
    debug_assert!(
        (1..k as usize).step_by(2).all(|i| poly.coeff(i).is_zero()),
        "even polynomial"
    );
    Ok((0..=(k as usize - 1) / 2)
        .map(|j| poly.coeff(2 * j))
        .collect())
}

fn g(weight: u32, character: CharacterName, dilation: u32) -> Generator {
    Generator::new(weight, character, dilation).expect("weights chosen with matching parity")
}

/// Fills in the free constant that cancels the generator constants.
fn with_balancing_constant(terms: Vec<(Cyclotomic12, Generator)>) -> QmfExpression {
    let e = QmfExpression::new(Cyclotomic12::zero(), terms);
    let c = -e.generator_constants();
    e.add(&QmfExpression::constant_only(c))
}

fn cr(r: Rational) -> Cyclotomic12 {
    Cyclotomic12::rational(r)
}

/// `sum_j a_k(j) (4^j G_{2j}(2 s tau) - G_{2j}(s tau))` for even `k`.
fn even_binomial_terms(k: u32, s: u32) -> Result<Vec<(Cyclotomic12, Generator)>> {
    let mut terms = Vec::new();
    for (j, a) in (1u32..).zip(a0_even_coeffs(k)?) {
        terms.push((
            cr(&a * &Rational::from(4).pow(j as i32)),
            g(2 * j, CharacterName::Trivial, 2 * s),
        ));
        terms.push((cr(-a), g(2 * j, CharacterName::Trivial, s)));
    }
    Ok(terms)
}

/// Decomposition of `U_{k,k}(0; q)`.
pub fn decompose_a0(k: u32) -> Result<QmfExpression> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let terms = if k.is_multiple_of(2) {
        even_binomial_terms(k, 2)?
    } else {
        (0u32..)
            .zip(a0_odd_coeffs(k)?)
            .map(|(j, b)| (cr(b), g(2 * j + 1, CharacterName::Chi4, 1)))
            .collect()
    };
    Ok(with_balancing_constant(terms))
}

/// Decomposition of `U_{k,k}(2; q)`, which is `U_{2k,2k}(0; q^{1/2})`.
pub fn decompose_a2(k: u32) -> Result<QmfExpression> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(with_balancing_constant(even_binomial_terms(2 * k, 1)?))
}

/// `-2^{-k-1}`, the constant of the `a = 0` decomposition.
pub fn closed_form_constant_a0(k: u32) -> Rational {
    -two_pow(k + 1).recip().expect("nonzero")
}

/// `-2^{-2k-1}`, the constant of the `a = 2` decomposition.
pub fn closed_form_constant_a2(k: u32) -> Rational {
    -two_pow(2 * k + 1).recip().expect("nonzero")
}

/// Numerator `Q` of degree at most `2k - 1` with `Q(0) = 0` and
/// `Q(x) = x^{2k} Q(1/x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricNumerator {
    q: Polynomial<Rational>,
    k: u32,
}

impl SymmetricNumerator {
    pub fn new(q: Polynomial<Rational>, k: u32) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidNumerator(format!(
                "Q = {q} with k = {k}: {why}"
            )))
        };
        if k == 0 {
            return bad("k must be positive");
        }
        let two_k = 2 * k as usize;
        if q.degree().is_some_and(|d| d >= two_k) {
            return bad("degree exceeds 2k - 1");
        }
        if !q.coeff(0).is_zero() {
            return bad("Q(0) must vanish");
        }
        if (0..=two_k).any(|i| q.coeff(i) != q.coeff(two_k - i)) {
            return bad("Q is not palindromic of degree 2k");
        }
        Ok(SymmetricNumerator { q, k })
    }

    /// `Q(x) = c_1 x + c_2 x^2 + ...`.
    pub fn from_coeffs(cs: &[Rational], k: u32) -> Result<Self> {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(cs.iter().cloned());
        Self::new(Polynomial::new(coeffs), k)
    }

    /// `Q(x) = x^k`.
    pub fn power(k: u32) -> Result<Self> {
        Self::new(Polynomial::monomial(Rational::one(), k as usize), k)
    }

    /// `Q(x) = x^r + x^{2k-r}`.
    pub fn symmetric_pair(k: u32, r: u32) -> Result<Self> {
        if r == 0 || r >= k {
            return Err(Error::InvalidNumerator(format!(
                "pair needs 1 <= r < k, got r = {r}, k = {k}"
            )));
        }
        let p = &Polynomial::monomial(Rational::one(), r as usize)
            + &Polynomial::monomial(Rational::one(), (2 * k - r) as usize);
        Self::new(p, k)
    }

    pub fn polynomial(&self) -> &Polynomial<Rational> {
        &self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `sum_n Q(q^n) / (1 + a q^n + q^{2n})^k` from direct nested sums.
    pub fn oracle_series(&self, a: &Rational, order: usize) -> Result<Series<Rational>> {
        let mut out = Series::zero(order);
        for (i, c) in self.q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_shifted(&u_series(1, self.k, i as u32, a, order)?, c, 0);
            }
        }
        Ok(out)
    }
}

fn pole_for(a: i64) -> Result<Cyclotomic12> {
    match a {
        1 => Ok(Cyclotomic12::zeta3()),
        -1 => Ok(Cyclotomic12::zeta6()),
        _ => Err(Error::Unsupported(format!(
            "partial fractions only for a = 1 or a = -1, got {a}"
        ))),
    }
}

/// `Q(x) / (1 + a x + x^2)^k = sum_r a(r) zeta x/(1 - zeta x)^r + sum_r a'(r) zeta^{-1} x/(1 - zeta^{-1} x)^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionData {
    a_q: Vec<Cyclotomic12>,
    a_q_prime: Vec<Cyclotomic12>,
    pole: Cyclotomic12,
}

impl PartialFractionData {
    /// `a(1), ..., a(k)`.
    pub fn a_q(&self) -> &[Cyclotomic12] {
        &self.a_q
    }

    /// `a'(1), ..., a'(k)`.
    pub fn a_q_prime(&self) -> &[Cyclotomic12] {
        &self.a_q_prime
    }

    pub fn pole(&self) -> &Cyclotomic12 {
        &self.pole
    }

    pub fn k(&self) -> usize {
        self.a_q.len()
    }

    /// The numerator recovered from the partial fractions after clearing
    /// the denominator `(1 - zeta x)^k (1 - zeta^{-1} x)^k`.
    pub fn reconstruct(&self) -> Polynomial<Cyclotomic12> {
        let (cols, cols_prime) = basis_columns(&self.pole, self.k());
        let mut acc = Polynomial::zero();
        for (c, p) in self
            .a_q
            .iter()
            .zip(&cols)
            .chain(self.a_q_prime.iter().zip(&cols_prime))
        {
            acc = &acc + &p.scale(c);
        }
        acc
    }

    pub fn reconstructs(&self, sn: &SymmetricNumerator) -> bool {
        self.reconstruct() == sn.q.map(|c| Cyclotomic12::rational(c.clone()))
    }

    /// Complex conjugate of every datum, including the pole. For a real
    /// numerator this is again valid data, with `conj(a) = a'`.
    pub fn conj(&self) -> Self {
        PartialFractionData {
            a_q: self.a_q.iter().map(Cyclotomic12::conj).collect(),
            a_q_prime: self.a_q_prime.iter().map(Cyclotomic12::conj).collect(),
            pole: self.pole.conj(),
        }
    }
}

/// Columns `zeta x (1 - zeta x)^{k-r} (1 - zeta^{-1} x)^k` and their
/// conjugates for `r = 1..k`.
fn basis_columns(
    zeta: &Cyclotomic12,
    k: usize,
) -> (Vec<Polynomial<Cyclotomic12>>, Vec<Polynomial<Cyclotomic12>>) {
    let zbar = zeta.conj();
    let one = Cyclotomic12::one();
    let lin = |z: &Cyclotomic12| Polynomial::linear(one.clone(), -z.clone());
    let (l, lbar) = (lin(zeta), lin(&zbar));
    let (full, full_bar) = (l.pow(k as u32), lbar.pow(k as u32));
    let column = |z: &Cyclotomic12,
                  own: &Polynomial<Cyclotomic12>,
                  other_full: &Polynomial<Cyclotomic12>,
                  r: usize| {
        let zx = Polynomial::monomial(z.clone(), 1);
        &(&zx * &own.pow((k - r) as u32)) * other_full
    };
    let cols = (1..=k).map(|r| column(zeta, &l, &full_bar, r)).collect();
    let cols_prime = (1..=k).map(|r| column(&zbar, &lbar, &full, r)).collect();
    (cols, cols_prime)
}

/// Gaussian elimination for a square system over a field.
fn solve<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>) -> Result<Vec<F>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inverse().ok_or(Error::SingularSystem)?;
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].mul_ref(&inv);
            let pivot_row = m[col].clone();
            for (x, p) in m[row].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f.mul_ref(p);
            }
            let d = f.mul_ref(&rhs[col]);
            rhs[row] -= &d;
        }
    }
    Ok((0..n)
        .map(|i| rhs[i].mul_ref(&m[i][i].inverse().expect("nonzero pivot")))
        .collect())
}

/// Solves for the partial-fraction coefficients by matching `x^1 .. x^{2k}`.
pub fn partial_fractions(sn: &SymmetricNumerator, a: i64) -> Result<PartialFractionData> {
    let zeta = pole_for(a)?;
    let k = sn.k as usize;
    let (cols, cols_prime) = basis_columns(&zeta, k);
    let all: Vec<&Polynomial<Cyclotomic12>> = cols.iter().chain(&cols_prime).collect();
    let matrix: Vec<Vec<Cyclotomic12>> = (1..=2 * k)
        .map(|i| all.iter().map(|p| p.coeff(i)).collect())
        .collect();
    let rhs: Vec<Cyclotomic12> = (1..=2 * k)
        .map(|i| Cyclotomic12::rational(sn.q.coeff(i)))
        .collect();
    let sol = solve(matrix, rhs)?;
    let pf = PartialFractionData {
        a_q: sol[..k].to_vec(),
        a_q_prime: sol[k..].to_vec(),
        pole: zeta,
    };
    if !pf.reconstructs(sn) {
        return Err(Error::Unsupported(format!(
            "partial fractions failed to reconstruct {}",
            sn.q
        )));
    }
    Ok(pf)
}

/// `c(l) = sum_{r=l}^{k} a(r)/(r-1)! [r-1, l-1]` for `l = 1..k`.
pub fn stirling_transform_of(a: &[Cyclotomic12]) -> Vec<Cyclotomic12> {
    let k = a.len();
    if k == 0 {
        return Vec::new();
    }
    let table = stirling_first_unsigned_table(k - 1);
    (1..=k)
        .map(|l| {
            (l..=k).fold(Cyclotomic12::zero(), |acc, r| {
                let w = Rational::from(BigInt::from(table[r - 1][l - 1].clone())) / fact(r - 1);
                acc + a[r - 1].scale(&w)
            })
        })
        .collect()
}

/// Stirling transform of the `zeta` family, `c(1..k)` (or `d(1..k)`).
pub fn stirling_transform(pf: &PartialFractionData) -> Vec<Cyclotomic12> {
    stirling_transform_of(&pf.a_q)
}

/// Checks `c'(l) = (-1)^l c(l)` between the two families.
pub fn conjugation_symmetric(pf: &PartialFractionData) -> bool {
    let c = stirling_transform_of(&pf.a_q);
    let cp = stirling_transform_of(&pf.a_q_prime);
    c.iter().zip(&cp).enumerate().all(|(i, (x, y))| {
        let l = i + 1;
        if l % 2 == 0 {
            x == y
        } else {
            *x == -y.clone()
        }
    })
}

fn decompose_pm1(sn: &SymmetricNumerator, a: i64) -> Result<QmfExpression> {
    let pf = partial_fractions(sn, a)?;
    if !conjugation_symmetric(&pf) {
        return Err(Error::Unsupported(
            "partial fraction data lacks conjugation symmetry".into(),
        ));
    }
    let c = stirling_transform(&pf);
    let i3 = Cyclotomic12::i_sqrt3();
    let mut terms = Vec::new();
    for (l, cl) in (1u32..).zip(c) {
        if cl.is_zero() {
            continue;
        }
        let pow = |b: i64| cl.scale(&Rational::from(b).pow(l as i32));
        match (a, l % 2) {
            (1, 1) => terms.push((i3.mul_ref(&cl), g(l, CharacterName::Chi3, 1))),
            (1, _) => {
                terms.push((pow(3), g(l, CharacterName::Trivial, 3)));
                terms.push((-cl.clone(), g(l, CharacterName::Trivial, 1)));
            }
            (_, 1) => {
                let ic = i3.mul_ref(&cl);
                terms.push((
                    ic.scale(&Rational::from(2).pow(l as i32)),
                    g(l, CharacterName::Chi3, 2),
                ));
                terms.push((ic, g(l, CharacterName::Chi3, 1)));
            }
            (_, _) => {
                terms.push((pow(6), g(l, CharacterName::Trivial, 6)));
                terms.push((-pow(3), g(l, CharacterName::Trivial, 3)));
                terms.push((-pow(2), g(l, CharacterName::Trivial, 2)));
                terms.push((cl.clone(), g(l, CharacterName::Trivial, 1)));
            }
        }
    }
    Ok(with_balancing_constant(terms))
}

/// Decomposition of `sum_n Q(q^n) / (1 + q^n + q^{2n})^k`.
pub fn decompose_a1(sn: &SymmetricNumerator) -> Result<QmfExpression> {
    decompose_pm1(sn, 1)
}

/// Decomposition of `sum_n Q(q^n) / (1 - q^n + q^{2n})^k`.
pub fn decompose_am1(sn: &SymmetricNumerator) -> Result<QmfExpression> {
    decompose_pm1(sn, -1)
}

/// `-Q(1) / (2 * 3^k)` for `a = 1` and `-Q(1) / 2` for `a = -1`.
pub fn closed_form_constant_pm1(sn: &SymmetricNumerator, a: i64) -> Result<Rational> {
    let q1 = sn.q.eval(&Rational::one());
    match a {
        1 => Ok(-q1 / (Rational::from(2) * Rational::from(3).pow(sn.k as i32))),
        -1 => Ok(-q1 / Rational::from(2)),
        _ => Err(Error::Unsupported(format!("a = {a}"))),
    }
}

/// `zeta^k Q(zeta^{-1}) / ((k-1)! (i sqrt 3)^k)`, the top Stirling coefficient.
pub fn closed_form_top_coefficient(sn: &SymmetricNumerator, a: i64) -> Result<Cyclotomic12> {
    let zeta = pole_for(a)?;
    let k = i64::from(sn.k);
    let num = zeta.pow(k).mul_ref(&sn.q.eval_in(&zeta.pow(-1)));
    let den = Cyclotomic12::i_sqrt3()
        .pow(k)
        .scale(&fact(sn.k as usize - 1));
    Ok(num.mul_ref(&den.checked_inverse()?))
}

/// Decomposition of `U_{k,k}(a; q)` for `a in {0, 1, -1, 2}`.
pub fn decompose_ukk(a: i64, k: u32) -> Result<QmfExpression> {
    match a {
        0 => decompose_a0(k),
        2 => decompose_a2(k),
        1 => decompose_a1(&SymmetricNumerator::power(k)?),
        -1 => decompose_am1(&SymmetricNumerator::power(k)?),
        _ => Err(Error::Unsupported(format!(
            "unsupported a = {a}; decompositions exist for a in {{0, 1, -1, 2}}"
        ))),
    }
}

/// Closed-form constant of [`decompose_ukk`].
pub fn closed_form_constant_ukk(a: i64, k: u32) -> Result<Rational> {
    match a {
        0 => Ok(closed_form_constant_a0(k)),
        2 => Ok(closed_form_constant_a2(k)),
        1 | -1 => closed_form_constant_pm1(&SymmetricNumerator::power(k)?, a),
        _ => Err(Error::Unsupported(format!("unsupported a = {a}"))),
    }
}

/// Outcome of comparing an expression with its defining series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub order_checked: usize,
    pub equal: bool,
    pub first_discrepancy: Option<usize>,
}

pub fn verify_expression(
    expr: &QmfExpression,
    oracle: &Series<Rational>,
) -> Result<VerificationReport> {
    let order = oracle.order();
    let lhs = expr.series(order)?;
    let first = lhs.first_difference(&oracle.to_cyclotomic());
    Ok(VerificationReport {
        order_checked: order,
        equal: first.is_none(),
        first_discrepancy: first,
    })
}

/// Decomposes `U_{k,k}(a; q)` and checks it against the direct series.
pub fn verify_ukk(a: i64, k: u32, order: usize) -> Result<(QmfExpression, VerificationReport)> {
    let expr = decompose_ukk(a, k)?;
    let oracle = u_series(1, k, k, &Rational::from(a), order)?;
    let report = verify_expression(&expr, &oracle)?;
    Ok((expr, report))
}

/// Decomposes a general numerator for `a = +-1` and checks it.
pub fn verify_numerator(
    sn: &SymmetricNumerator,
    a: i64,
    order: usize,
) -> Result<(QmfExpression, VerificationReport)> {
    let expr = decompose_pm1(sn, a)?;
    let oracle = sn.oracle_series(&Rational::from(a), order)?;
    let report = verify_expression(&expr, &oracle)?;
    Ok((expr, report))
}

/// `(-1)^{k/2}/(k-1)!`, the leading `a_k`.
pub fn a0_even_top(k: u32) -> Rational {
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    Rational::from(sign) / fact(k as usize - 1)
}

/// `(-1)^{(k-1)/2}/(2^{k-1}(k-1)!)`, the leading `b_k`.
pub fn a0_odd_top(k: u32) -> Rational {
    let sign = if ((k - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Rational::from(sign) / (two_pow(k - 1) * fact(k as usize - 1))
}
