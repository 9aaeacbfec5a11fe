//! Property suites shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use macmahon_qmf::arith::{
    bernoulli_numbers, binomial, eulerian_polynomial, factorial, stirling_first_unsigned,
    stirling_second, CharacterName,
};
use macmahon_qmf::eisenstein::Generator;
use macmahon_qmf::macmahon::u_series;
use macmahon_qmf::quasishuffle::{evaluate, quasi_shuffle, Letter, ShuffleSum, Word};
use macmahon_qmf::{Cyclotomic12, Polynomial, Rational, Series};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub type Check = Result<(), String>;

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

/// `1/(1-t)^r` truncated to `order` coefficients.
fn inverse_power(r: usize, order: usize) -> Vec<Rational> {
    (0..order)
        .map(|m| Rational::from(binomial((m + r) as i64 - 1, r as i64 - 1)))
        .collect()
}

fn poly_times_series(p: &Polynomial<Rational>, s: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); s.len()];
    for (i, c) in p.coeffs().iter().enumerate() {
        for j in 0..s.len().saturating_sub(i) {
            out[i + j] += c.clone() * &s[j];
        }
    }
    out
}

/// Symmetry for `1 <= n <= 20`.
pub fn eulerian_symmetry() -> Check {
    for n in 1..=20usize {
        let p = eulerian_polynomial(n);
        if p.degree() != Some(n - 1) {
            return Err(format!("P_{n} has degree {:?}", p.degree()));
        }
        let rev = p.reversed(n - 1).expect("degree n-1");
        if rev != p {
            return Err(format!("P_{n} is not palindromic"));
        }
    }
    Ok(())
}

/// `sum_m m^n t^{m-1} (1-t)^{n+1} = P_n(t)` to order 40 for `n <= 12`,
/// from the power sums alone.
pub fn eulerian_definition() -> Check {
    let order = 40;
    for n in 0..=12usize {
        let powers: Vec<Rational> = (1..=order)
            .map(|m| Rational::from(BigInt::from(m).pow(n as u32)))
            .collect();
        let one_minus = Polynomial::linear(q(1), q(-1)).pow(n as u32 + 1);
        let lhs = poly_times_series(&one_minus, &powers);
        let p = eulerian_polynomial(n);
        for (i, v) in lhs.iter().enumerate() {
            if *v != p.coeff(i) {
                return Err(format!("P_{n}: coefficient of t^{i}"));
            }
        }
    }
    Ok(())
}

/// `(r-1)! (1-t)^{-r} = sum_k [r-1, k-1] P_{k-1}(t) (1-t)^{-k}` to order 50, `r <= 12`.
pub fn eulerian_inversion() -> Check {
    let order = 50;
    for r in 1..=12usize {
        let f = Rational::from(BigInt::from(factorial(r as u64 - 1)));
        let lhs: Vec<Rational> = inverse_power(r, order)
            .into_iter()
            .map(|c| c * &f)
            .collect();
        let mut rhs = vec![Rational::zero(); order];
        for k in 1..=r {
            let s = Rational::from(BigInt::from(stirling_first_unsigned(r - 1, k - 1)));
            let term = poly_times_series(&eulerian_polynomial(k - 1), &inverse_power(k, order));
            for (acc, t) in rhs.iter_mut().zip(term) {
                *acc += t * &s;
            }
        }
        if lhs != rhs {
            return Err(format!("inversion fails for r = {r}"));
        }
    }
    Ok(())
}

/// `P_{k-1}(t)/(1-t)^k = sum_r (-1)^{k-r} (r-1)! {k-1, r-1} (1-t)^{-r}` to order 50, `k <= 12`.
pub fn eulerian_partial_fractions() -> Check {
    let order = 50;
    for k in 1..=12usize {
        let lhs = poly_times_series(&eulerian_polynomial(k - 1), &inverse_power(k, order));
        let mut rhs = vec![Rational::zero(); order];
        for r in 1..=k {
            let sign = if (k - r) % 2 == 0 { 1 } else { -1 };
            let c = Rational::from(BigInt::from(
                factorial(r as u64 - 1) * stirling_second(k - 1, r - 1),
            )) * q(sign);
            for (acc, t) in rhs.iter_mut().zip(inverse_power(r, order)) {
                *acc += t * &c;
            }
        }
        if lhs != rhs {
            return Err(format!("partial fractions fail for k = {k}"));
        }
    }
    Ok(())
}

/// `sum_j (-1)^{n-j} [n, j] {j, m} = delta_{n m}` for `n <= 20`, and the
/// particular values `P_n(0) = 1`, `P_n(1) = n!`.
pub fn stirling_inversion_and_values() -> Check {
    for n in 0..=20usize {
        for m in 0..=n {
            let mut acc = BigInt::from(0);
            for j in m..=n {
                let t = BigInt::from(stirling_first_unsigned(n, j))
                    * BigInt::from(stirling_second(j, m));
                acc += if (n - j) % 2 == 0 { t } else { -t };
            }
            if acc != BigInt::from(i64::from(n == m)) {
                return Err(format!("Stirling inversion fails at ({n}, {m})"));
            }
        }
        let p = eulerian_polynomial(n);
        if p.eval(&q(0)) != q(1)
            || p.eval(&q(1)) != Rational::from(BigInt::from(factorial(n as u64)))
        {
            return Err(format!("particular values of P_{n}"));
        }
    }
    Ok(())
}

/// `B_l(x) = sum_j C(l, j) B_j x^{l-j}`.
fn bernoulli_poly(l: usize, x: &Rational) -> Rational {
    let b = bernoulli_numbers(l);
    (0..=l)
        .map(|j| Rational::from(binomial(l as i64, j as i64)) * &b[j] * x.pow((l - j) as i32))
        .sum()
}

/// `zeta_r^n P_{l-1}(zeta_r^n) / (1 - zeta_r^n)^l = r^{l-1} sum_m zeta_r^{mn} zeta(1-l, m/r)`
/// in the twelfth cyclotomic field, with `zeta(1-l, x) = -B_l(x)/l`.
pub fn eulerian_zeta_relation() -> Check {
    for r in [2u32, 3, 4, 6, 12] {
        let z = Cyclotomic12::root_of_unity(r).expect("divides 12");
        for n in 1..r {
            let w = z.pow(i64::from(n));
            for l in 1..=8usize {
                let p = eulerian_polynomial(l - 1).map(|c| Cyclotomic12::rational(c.clone()));
                let den = (Cyclotomic12::one() - w.clone()).pow(l as i64);
                let lhs =
                    w.clone() * p.eval(&w) * den.checked_inverse().map_err(|e| e.to_string())?;
                let mut rhs = Cyclotomic12::zero();
                for m in 1..=r {
                    let hz = -bernoulli_poly(
                        l,
                        &Rational::new(i64::from(m), i64::from(r)).expect("r > 0"),
                    ) / q(l as i64);
                    rhs += z.pow(i64::from(m * n)).scale(&hz);
                }
                let rhs = rhs.scale(&q(i64::from(r).pow(l as u32 - 1)));
                if lhs != rhs {
                    return Err(format!("zeta relation fails for r={r}, n={n}, l={l}"));
                }
            }
        }
    }
    Ok(())
}

pub fn eulerian_stirling_suite() -> Check {
    eulerian_symmetry()?;
    eulerian_definition()?;
    eulerian_inversion()?;
    eulerian_partial_fractions()?;
    stirling_inversion_and_values()?;
    eulerian_zeta_relation()
}

fn letter() -> impl Strategy<Value = Letter> {
    (1u32..=3, 1u32..=3).prop_map(|(k, r)| Letter::new(k, r).expect("positive"))
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max_len).prop_map(Word::new)
}

fn shuffle_sum(max_len: usize) -> impl Strategy<Value = ShuffleSum> {
    prop::collection::vec((word(max_len), -3i64..=3), 1..=3).prop_map(|ts| {
        let mut s = ShuffleSum::zero();
        for (w, c) in ts {
            s.add_term(w, q(c));
        }
        s
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Commutativity and associativity of the quasi-shuffle product.
pub fn shuffle_algebra(cases: u32) -> Check {
    runner(cases)
        .run(
            &(shuffle_sum(3), shuffle_sum(3), shuffle_sum(2)),
            |(u, v, w)| {
                prop_assert_eq!(quasi_shuffle(&u, &v), quasi_shuffle(&v, &u));
                prop_assert_eq!(
                    quasi_shuffle(&quasi_shuffle(&u, &v), &w),
                    quasi_shuffle(&u, &quasi_shuffle(&v, &w))
                );
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// Evaluation to q-series turns the quasi-shuffle product into multiplication.
pub fn shuffle_homomorphism(cases: u32, order: usize) -> Check {
    runner(cases)
        .run(&(word(3), word(3), -2i64..=2), |(u, v, a)| {
            let (u, v, a) = (ShuffleSum::word(u), ShuffleSum::word(v), q(a));
            let lhs = evaluate(&quasi_shuffle(&u, &v), &a, order);
            let rhs = evaluate(&u, &a, order).mul(&evaluate(&v, &a, order));
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)`.
fn generalized_bernoulli_value(chi: CharacterName, k: usize) -> Rational {
    let c = chi.character();
    let f = i64::from(c.modulus());
    let s: Rational = (1..=f)
        .map(|a| c.value(a) * bernoulli_poly(k, &Rational::new(a, f).expect("f > 0")))
        .sum();
    s * q(f).pow(k as i32 - 1)
}

/// Every generator of weight `<= 8` and dilation `<= 4`: the constant is
/// `-B_{k,chi}/(2k)` and the `n`-th coefficient is a plain double loop over
/// `d m = n / dilation` for `n <= 200`.
pub fn eisenstein_double_loop() -> Check {
    let order = 201;
    for chi in [
        CharacterName::Trivial,
        CharacterName::Chi3,
        CharacterName::Chi4,
    ] {
        let c = chi.character();
        for k in 1..=8u32 {
            if !c.parity_matches(k) || (chi == CharacterName::Trivial && k < 2) {
                continue;
            }
            for l in 1..=4u32 {
                let g = Generator::new(k, chi, l).map_err(|e| e.to_string())?;
                let s = g.series(order).map_err(|e| e.to_string())?;
                let constant = -generalized_bernoulli_value(chi, k as usize) / q(2 * i64::from(k));
                if s.coeff(0) != Some(&constant) {
                    return Err(format!("constant of {g}"));
                }
                for n in 1..order {
                    let mut acc = Rational::zero();
                    if n % l as usize == 0 {
                        let n = n / l as usize;
                        for d in 1..=n {
                            for m in 1..=n {
                                if d * m == n {
                                    acc += c.value(d as i64) * q(d as i64).pow(k as i32 - 1);
                                }
                            }
                        }
                    }
                    if s.coeff(n) != Some(&acc) {
                        return Err(format!("coefficient {n} of {g}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `U_1(q)` has `q^n`-coefficient `#{(x, y) : x^2 + y^2 = n} / 4` for `1 <= n <= 200`.
pub fn two_squares() -> Check {
    let n_max = 200i64;
    let s: Series<Rational> =
        u_series(1, 1, 1, &q(0), n_max as usize + 1).map_err(|e| e.to_string())?;
    for n in 1..=n_max {
        let mut count = 0i64;
        for x in -15i64..=15 {
            for y in -15i64..=15 {
                if x * x + y * y == n {
                    count += 1;
                }
            }
        }
        if s.coeff(n as usize) != Some(&Rational::new(count, 4).expect("nonzero")) {
            return Err(format!("coefficient {n}"));
        }
    }
    Ok(())
}
