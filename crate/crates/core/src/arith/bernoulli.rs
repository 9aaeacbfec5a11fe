use num_bigint::BigInt;

use super::{binomial, factorial, DirichletCharacter, Rational};
use crate::error::{Error, Result};

/// `B_0 .. B_n` with the convention `B_1 = -1/2`, from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|j| Rational::from(binomial(m as i64 + 1, j as i64)) * &b[j])
            .sum();
        b.push(-s / Rational::from(m as i64 + 1));
    }
    b
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("nonempty")
}

/// `zeta(1-k)` for `k >= 1`: `-B_k / k`, and `zeta(0) = -1/2`.
pub fn zeta_nonpositive(k: usize) -> Result<Rational> {
    match k {
        0 => Err(Error::InvalidArgument("zeta(1-k) needs k >= 1".into())),
        1 => Ok(Rational::new(-1, 2).expect("nonzero")),
        _ => Ok(-bernoulli(k) / Rational::from(k as i64)),
    }
}

/// Generalised Bernoulli numbers `B_{0,chi} .. B_{n,chi}`, read off from
/// `sum_{a=1}^{N} chi(a) t e^{at} / (e^{Nt} - 1)` by exact division of
/// truncated exponential series.
pub fn generalized_bernoulli(chi: &DirichletCharacter, n: usize) -> Vec<Rational> {
    let modulus = i64::from(chi.modulus());
    let fact: Vec<Rational> = (0..=n + 1)
        .map(|j| Rational::from(BigInt::from(factorial(j as u64))))
        .collect();
    // numerator: sum_a chi(a) e^{at}
    let num: Vec<Rational> = (0..=n)
        .map(|j| {
            let s: Rational = (1..=modulus)
                .map(|a| chi.value(a) * Rational::from(a).pow(j as i32))
                .sum();
            s / &fact[j]
        })
        .collect();
    // denominator: (e^{Nt} - 1) / t = sum_j N^{j+1} t^j / (j+1)!
    let den: Vec<Rational> = (0..=n)
        .map(|j| Rational::from(modulus).pow(j as i32 + 1) / &fact[j + 1])
        .collect();
    let den0_inv = den[0].recip().expect("N >= 1");
    let mut quot: Vec<Rational> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = num[j].clone();
        for i in 0..j {
            acc -= &(&quot[i] * &den[j - i]);
        }
        quot.push(acc * &den0_inv);
    }
    quot.into_iter()
        .enumerate()
        .map(|(j, c)| c * &fact[j])
        .collect()
}

/// `L(chi, 1-k) = -B_{k,chi} / k` for a primitive character of modulus at least 2.
pub fn l_nonpositive(chi: &DirichletCharacter, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("L(chi, 1-k) needs k >= 1".into()));
    }
    if !chi.is_primitive_nontrivial() {
        return Err(Error::InvalidCharacter(format!(
            "{} is not a primitive character of modulus >= 2",
            chi.name()
        )));
    }
    let b = generalized_bernoulli(chi, k).pop().expect("nonempty");
    Ok(-b / Rational::from(k as i64))
}
