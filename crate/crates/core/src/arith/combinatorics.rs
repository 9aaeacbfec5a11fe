use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{Polynomial, Rational};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)` for integer `n, k`; zero when `k < 0`,
/// `k > n >= 0`. Negative `n` uses the generalised definition.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rows `0..=n` of the Stirling triangle of the second kind.
pub fn stirling_second_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigUint::one()]);
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|r| {
                let stay = prev.get(r).map(|s| s * r).unwrap_or_default();
                let grow = if r > 0 {
                    prev[r - 1].clone()
                } else {
                    BigUint::zero()
                };
                stay + grow
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Rows `0..=n` of the unsigned Stirling triangle of the first kind.
pub fn stirling_first_unsigned_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigUint::one()]);
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|r| {
                let stay = prev.get(r).map(|s| s * (m - 1)).unwrap_or_default();
                let grow = if r > 0 {
                    prev[r - 1].clone()
                } else {
                    BigUint::zero()
                };
                stay + grow
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `{n r}`: set partitions of an `n`-set into `r` blocks.
pub fn stirling_second(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    stirling_second_table(n)[n][r].clone()
}

/// `[n r]`: permutations of `n` letters with `r` cycles.
pub fn stirling_first_unsigned(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    stirling_first_unsigned_table(n)[n][r].clone()
}

/// Eulerian polynomial `P_n(t)`, the numerator in
/// `sum_{m>=1} m^n t^m = t P_n(t) / (1-t)^(n+1)`, built from the expansion
/// `P_n(t) = sum_r r! {n r} (t-1)^(n-r)` around `t = 1`.
pub fn eulerian_polynomial(n: usize) -> Polynomial<Rational> {
    let stirling = stirling_second_table(n);
    let t_minus_1 = Polynomial::linear(Rational::from(-1), Rational::one());
    let mut acc = Polynomial::zero();
    for (r, s) in stirling[n].iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let c = Rational::from(BigInt::from(factorial(r as u64) * s));
        acc = &acc + &t_minus_1.pow((n - r) as u32).scale(&c);
    }
    acc
}
