//! Direct evaluation of the nested sums
//! `h_{k_1..k_t; r_1..r_t}(a; q) = sum_{0 < n_1 < ... < n_t} prod_j q^{r_j n_j} / (1 + a q^{n_j} + q^{2 n_j})^{k_j}`
//! and their polynomial generalisation.
//!
//! Chains are summed level by level: `C_j` collects all chains of length `j`
//! whose last index is below the current `n`, and stepping `n` adds
//! `q^{e_j(n)} D_j(q^n) C_{j-1}` to `C_j` for `j = t, ..., 1`. Contributions
//! that cannot reach below the target order once the remaining levels are
//! appended are skipped.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::series::{quadratic_power, Series};

/// Index word `(k_1, r_1) ... (k_t, r_t)`; the empty word gives the series 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    ks: Vec<u32>,
    rs: Vec<u32>,
}

impl MultiIndex {
    pub fn new(ks: Vec<u32>, rs: Vec<u32>) -> Result<Self> {
        if ks.len() != rs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values of k but {} values of r",
                ks.len(),
                rs.len()
            )));
        }
        if ks.iter().chain(&rs).any(|&v| v == 0) {
            return Err(Error::InvalidArgument(
                "indices k and r must be positive".into(),
            ));
        }
        Ok(MultiIndex { ks, rs })
    }

    pub fn empty() -> Self {
        MultiIndex {
            ks: Vec::new(),
            rs: Vec::new(),
        }
    }

    /// `(k, r)` repeated `t` times.
    pub fn repeated(t: usize, k: u32, r: u32) -> Result<Self> {
        Self::new(vec![k; t], vec![r; t])
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn rs(&self) -> &[u32] {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (k, r) in self.ks.iter().zip(&self.rs) {
            write!(f, "({k},{r})")?;
        }
        Ok(())
    }
}

/// One level of a chain: exponent `e(n)` and denominator series `D(x)`,
/// which is evaluated at `x = q^n`.
struct Level<'a> {
    exponent: &'a dyn Fn(usize) -> usize,
    denom: &'a Series<Rational>,
}

/// Runs the level-by-level accumulation. With `prune` set only the top level
/// is exact; otherwise every `C_j` is returned exactly to `order`.
fn accumulate(levels: &[Level<'_>], order: usize, prune: bool) -> Vec<Series<Rational>> {
    let t = levels.len();
    let mut acc: Vec<Series<Rational>> = (0..=t)
        .map(|j| {
            if j == 0 {
                Series::one(order)
            } else {
                Series::zero(order)
            }
        })
        .collect();
    // cheapest prefix below level j: n_i = i
    let prefix: Vec<usize> = (0..t)
        .scan(0usize, |s, j| {
            let cur = *s;
            *s = s.saturating_add((levels[j].exponent)(j + 1));
            Some(cur)
        })
        .collect();
    let tail = |j: usize, n: usize| -> usize {
        if !prune {
            return 0;
        }
        (j + 1..t).fold(0usize, |s, i| {
            s.saturating_add((levels[i].exponent)(n + i - j))
        })
    };
    let mut n = 1usize;
    loop {
        let mut active = false;
        for j in (0..t).rev() {
            let e = (levels[j].exponent)(n);
            let lim = order.saturating_sub(tail(j, n));
            if e.saturating_add(prefix[j]) >= lim {
                continue;
            }
            active = true;
            let (lower, upper) = acc.split_at_mut(j + 1);
            let prev = &lower[j];
            let target = &mut upper[0];
            let Some(v) = prev.valuation() else { continue };
            for (i, d) in levels[j].denom.coeffs().iter().enumerate() {
                let shift = e + i * n;
                if shift + v >= lim {
                    break;
                }
                if d.is_zero() {
                    continue;
                }
                let dst = &mut target.coeffs_mut()[shift..lim];
                for (slot, c) in dst.iter_mut().zip(prev.coeffs()).skip(v) {
                    if !c.is_zero() {
                        *slot += &(c * d);
                    }
                }
            }
        }
        if !active {
            break;
        }
        n += 1;
    }
    acc
}

struct DenomCache {
    a: Rational,
    order: usize,
    table: HashMap<u32, Series<Rational>>,
}

impl DenomCache {
    fn new(a: &Rational, order: usize) -> Self {
        DenomCache {
            a: a.clone(),
            order,
            table: HashMap::new(),
        }
    }

    fn fill(&mut self, k: u32) {
        if !self.table.contains_key(&k) {
            let d =
                quadratic_power(&self.a, -i64::from(k), self.order).expect("constant term is 1");
            self.table.insert(k, d);
        }
    }
}

/// `h_{k_1..k_t; r_1..r_t}(a; q)` to the given order.
pub fn h_series(idx: &MultiIndex, a: &Rational, order: usize) -> Series<Rational> {
    if idx.is_empty() {
        return Series::one(order);
    }
    let mut cache = DenomCache::new(a, order);
    for &k in &idx.ks {
        cache.fill(k);
    }
    let exps: Vec<Box<dyn Fn(usize) -> usize>> = idx
        .rs
        .iter()
        .map(|&r| {
            Box::new(move |n: usize| (r as usize).saturating_mul(n)) as Box<dyn Fn(usize) -> usize>
        })
        .collect();
    let levels: Vec<Level<'_>> = idx
        .ks
        .iter()
        .zip(&exps)
        .map(|(k, e)| Level {
            exponent: e.as_ref(),
            denom: &cache.table[k],
        })
        .collect();
    accumulate(&levels, order, true).pop().expect("t >= 1")
}

/// `U_{t,k,r}(a; q)`.
pub fn u_series(t: usize, k: u32, r: u32, a: &Rational, order: usize) -> Result<Series<Rational>> {
    Ok(h_series(&MultiIndex::repeated(t, k, r)?, a, order))
}

/// `U_{0,k,r}, ..., U_{t_max,k,r}` in one pass.
pub fn u_series_family(
    t_max: usize,
    k: u32,
    r: u32,
    a: &Rational,
    order: usize,
) -> Result<Vec<Series<Rational>>> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidArgument(
            "indices k and r must be positive".into(),
        ));
    }
    let denom = quadratic_power(a, -i64::from(k), order)?;
    let exp = move |n: usize| (r as usize).saturating_mul(n);
    let levels: Vec<Level<'_>> = (0..t_max)
        .map(|_| Level {
            exponent: &exp,
            denom: &denom,
        })
        .collect();
    Ok(accumulate(&levels, order, false))
}

/// Coefficient `M_{t,k,r}(a; n)` of `q^n` in `U_{t,k,r}(a; q)`.
pub fn m_coefficient(t: usize, k: u32, r: u32, a: &Rational, n: usize) -> Result<Rational> {
    let s = u_series(t, k, r, a, n + 1)?;
    Ok(s.coeff(n).expect("order n+1").clone())
}

/// `sum_{n_1 < ... < n_t} q^{P(n_1) + ... + P(n_t)} prod_j (1 + Q(q^{n_j}))^{-k}`.
pub fn u_general_series(
    p: &Polynomial<Rational>,
    q: &Polynomial<Rational>,
    t: usize,
    k: i64,
    order: usize,
) -> Result<Series<Rational>> {
    if !p.has_natural_coeffs() || p.degree().is_none_or(|d| d == 0) || !p.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(format!(
            "P = {p} must have nonnegative integer coefficients, P(0) = 0 and degree >= 1"
        )));
    }
    if !q.coeff(0).is_zero() {
        return Err(Error::InvalidPolynomial(format!(
            "Q = {q} must satisfy Q(0) = 0"
        )));
    }
    if t == 0 {
        return Ok(Series::one(order));
    }
    let mut base = q.coeffs().to_vec();
    base[0] = Rational::one();
    let denom = Series::from_coeffs(base, order).pow_int(-k)?;
    let exp = |n: usize| p.eval_natural(n);
    let levels: Vec<Level<'_>> = (0..t)
        .map(|_| Level {
            exponent: &exp,
            denom: &denom,
        })
        .collect();
    Ok(accumulate(&levels, order, true).pop().expect("t >= 1"))
}
