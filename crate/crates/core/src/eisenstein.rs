//! Eisenstein series `G_k(chi; l tau)` as q-expansions and exact linear
//! combinations of them.
//!
//! `G_k(tau) = zeta(1-k)/2 + sum_n sigma_{k-1}(n) q^n` for even `k >= 2` and
//! `G_k(chi; tau) = L(chi, 1-k)/2 + sum_n sum_{d | n} chi(d) d^{k-1} q^n`
//! for a primitive character with `chi(-1) = (-1)^k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{
    l_nonpositive, zeta_nonpositive, CharacterName, Cyclotomic12, DirichletCharacter, Field,
    Rational,
};
use crate::error::{Error, Result};
use crate::series::Series;

/// `sum_n sum_{d | n} chi(d) d^{k-1} q^n` with no constant term.
fn twisted_divisor_series(chi: &DirichletCharacter, k: u32, order: usize) -> Series<Rational> {
    let mut coeffs = vec![BigInt::from(0); order];
    for d in 1..order {
        let c = chi.value_i64(d as i64);
        if c == 0 {
            continue;
        }
        let w = BigInt::from(c) * BigInt::from(d).pow(k - 1);
        for m in (d..order).step_by(d) {
            coeffs[m] += &w;
        }
    }
    Series::from_coeffs(coeffs.into_iter().map(Rational::from).collect(), order)
}

/// `F_k = sum_{n >= 1} sigma_{k-1}(n) q^n`.
pub fn f_series(k: u32, order: usize) -> Result<Series<Rational>> {
    if k == 0 {
        return Err(Error::InvalidArgument("F_k needs k >= 1".into()));
    }
    Ok(twisted_divisor_series(
        &CharacterName::Trivial.character(),
        k,
        order,
    ))
}

/// `G_k` for even `k >= 2`.
pub fn g_series(k: u32, order: usize) -> Result<Series<Rational>> {
    Generator::new(k, CharacterName::Trivial, 1)?.series(order)
}

/// `G_k(chi; tau)`; the trivial character gives [`g_series`].
pub fn g_chi_series(chi: &DirichletCharacter, k: u32, order: usize) -> Result<Series<Rational>> {
    Generator::new(k, chi.name(), 1)?.series(order)
}

/// `G_weight(character; dilation * tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    weight: u32,
    character: CharacterName,
    dilation: u32,
}

impl Generator {
    pub fn new(weight: u32, character: CharacterName, dilation: u32) -> Result<Self> {
        if dilation == 0 {
            return Err(Error::InvalidArgument("dilation must be at least 1".into()));
        }
        let chi = character.character();
        let ok = match character {
            CharacterName::Trivial => weight >= 2 && weight.is_multiple_of(2),
            _ => weight >= 1 && chi.parity_matches(weight),
        };
        if !ok {
            return Err(Error::ParityMismatch {
                character: character.to_string(),
                weight,
            });
        }
        Ok(Generator {
            weight,
            character,
            dilation,
        })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn character(&self) -> CharacterName {
        self.character
    }

    pub fn dilation(&self) -> u32 {
        self.dilation
    }

    pub fn constant(&self) -> Rational {
        let half = Rational::new(1, 2).expect("nonzero");
        let v = match self.character {
            CharacterName::Trivial => zeta_nonpositive(self.weight as usize),
            _ => l_nonpositive(&self.character.character(), self.weight as usize),
        };
        v.expect("validated generator") * half
    }

    /// Undilated q-expansion.
    pub fn base_series(&self, order: usize) -> Series<Rational> {
        let mut s = twisted_divisor_series(&self.character.character(), self.weight, order);
        if order > 0 {
            s.set_coeff(0, self.constant());
        }
        s
    }

    pub fn series(&self, order: usize) -> Result<Series<Rational>> {
        let base_order = order.div_ceil(self.dilation as usize).max(1).min(order);
        Series::from_coeffs(self.base_series(base_order).into_coeffs(), order)
            .dilate(self.dilation as usize)
    }

    /// Ordering key: character name, weight, dilation.
    fn key(&self) -> (&'static str, u32, u32) {
        (self.character.as_str(), self.weight, self.dilation)
    }

    fn is_g2(&self) -> bool {
        self.character == CharacterName::Trivial && self.weight == 2
    }

    /// Level contribution `dilation * modulus`.
    pub fn level(&self) -> u64 {
        u64::from(self.dilation) * u64::from(self.character.character().modulus())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.dilation == 1 {
            "tau".to_string()
        } else {
            format!("{}tau", self.dilation)
        };
        match self.character {
            CharacterName::Trivial => write!(f, "G_{}({arg})", self.weight),
            c => write!(f, "G_{}({c}; {arg})", self.weight),
        }
    }
}

/// `constant + sum_i coeff_i * generator_i`, kept in canonical form: distinct
/// generators sorted by (character name, weight, dilation), nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QmfExpression {
    constant: Cyclotomic12,
    terms: Vec<(Cyclotomic12, Generator)>,
}

impl QmfExpression {
    pub fn new(constant: Cyclotomic12, terms: Vec<(Cyclotomic12, Generator)>) -> Self {
        let mut merged: Vec<(Cyclotomic12, Generator)> = Vec::new();
        for (c, g) in terms {
            match merged.iter_mut().find(|(_, h)| *h == g) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, g)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged.sort_by(|a, b| a.1.key().cmp(&b.1.key()));
        QmfExpression {
            constant,
            terms: merged,
        }
    }

    pub fn constant_only(c: Cyclotomic12) -> Self {
        QmfExpression {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn constant(&self) -> &Cyclotomic12 {
        &self.constant
    }

    pub fn terms(&self) -> &[(Cyclotomic12, Generator)] {
        &self.terms
    }

    pub fn coeff_of(&self, g: &Generator) -> Cyclotomic12 {
        self.terms
            .iter()
            .find(|(_, h)| h == g)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(Cyclotomic12::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        QmfExpression::new(self.constant.clone() + other.constant.clone(), terms)
    }

    pub fn scale(&self, c: &Cyclotomic12) -> Self {
        QmfExpression::new(
            self.constant.mul_ref(c),
            self.terms.iter().map(|(x, g)| (x.mul_ref(c), *g)).collect(),
        )
    }

    pub fn highest_weight(&self) -> u32 {
        self.terms.iter().map(|(_, g)| g.weight).max().unwrap_or(0)
    }

    /// Least common multiple of `dilation * modulus` over all generators.
    pub fn level(&self) -> u64 {
        self.terms
            .iter()
            .fold(1u64, |acc, (_, g)| acc.lcm(&g.level()))
    }

    /// Whether any `G_2` term occurs.
    pub fn contains_g2(&self) -> bool {
        self.terms.iter().any(|(_, g)| g.is_g2())
    }

    /// Whether the non-modular part of the `G_2(l tau)` terms survives:
    /// `G_2(l tau)` carries `1/l` times the anomaly of `G_2(tau)`, so the
    /// combination is quasimodular exactly when `sum c_l / l` is nonzero.
    pub fn quasimodular(&self) -> bool {
        let anomaly = self.terms.iter().filter(|(_, g)| g.is_g2()).fold(
            Cyclotomic12::zero(),
            |acc, (c, g)| {
                acc + c.scale(&Rational::new(1, i64::from(g.dilation)).expect("dilation >= 1"))
            },
        );
        !anomaly.is_zero()
    }

    /// Sum of `coeff * constant term of generator`, excluding the free constant.
    pub fn generator_constants(&self) -> Cyclotomic12 {
        self.terms.iter().fold(Cyclotomic12::zero(), |acc, (c, g)| {
            acc + c.scale(&g.constant())
        })
    }

    pub fn series(&self, order: usize) -> Result<Series<Cyclotomic12>> {
        let mut out = Series::constant(self.constant.clone(), order);
        for (c, g) in &self.terms {
            out.add_scaled_shifted(&g.series(order)?.to_cyclotomic(), c, 0);
        }
        Ok(out)
    }

    /// The q-expansion over the rationals, or `None` if some coefficient
    /// keeps an irrational part.
    pub fn rational_series(&self, order: usize) -> Result<Option<Series<Rational>>> {
        Ok(self.series(order)?.to_rational())
    }

    pub fn to_json(&self) -> QmfExpressionJson {
        QmfExpressionJson {
            constant: self.constant.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(c, g)| TermJson {
                    coeff: c.to_string(),
                    weight: g.weight,
                    character: g.character,
                    dilation: g.dilation,
                })
                .collect(),
            highest_weight: self.highest_weight(),
            level: self.level(),
            quasimodular: self.quasimodular(),
        }
    }

    pub fn from_json(js: &QmfExpressionJson) -> Result<Self> {
        let parse = |s: &str| {
            s.parse::<Cyclotomic12>()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
        };
        let terms = js
            .terms
            .iter()
            .map(|t| {
                Ok((
                    parse(&t.coeff)?,
                    Generator::new(t.weight, t.character, t.dilation)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QmfExpression::new(parse(&js.constant)?, terms))
    }
}

impl fmt::Display for QmfExpression {
    /// `c_1*G_.. + c_2*G_.. + constant`, with unit coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put =
            |f: &mut fmt::Formatter<'_>, c: &Cyclotomic12, body: Option<String>| -> fmt::Result {
                let parts = c.term_parts();
                let sep = match (first, parts.negative) {
                    (true, false) => "",
                    (true, true) => "-",
                    (false, false) => " + ",
                    (false, true) => " - ",
                };
                first = false;
                let mag = if parts.atomic {
                    parts.magnitude.clone()
                } else {
                    format!("({})", parts.magnitude)
                };
                match body {
                    None => write!(f, "{sep}{mag}"),
                    Some(b) if parts.is_unit() => write!(f, "{sep}{b}"),
                    Some(b) => write!(f, "{sep}{mag}*{b}"),
                }
            };
        for (c, g) in &self.terms {
            put(f, c, Some(g.to_string()))?;
        }
        if !self.constant.is_zero() || self.terms.is_empty() {
            put(f, &self.constant, None)?;
        }
        Ok(())
    }
}

/// JSON form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub weight: u32,
    pub character: CharacterName,
    pub dilation: u32,
}

/// JSON form of a [`QmfExpression`] with its metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmfExpressionJson {
    pub constant: String,
    pub terms: Vec<TermJson>,
    pub highest_weight: u32,
    pub level: u64,
    pub quasimodular: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn cq(n: i64, d: i64) -> Cyclotomic12 {
        Cyclotomic12::rational(q(n, d))
    }

    fn gen(k: u32, c: CharacterName, l: u32) -> Generator {
        Generator::new(k, c, l).unwrap()
    }

    /// `sum_{m d = n} chi(d) d^{k-1}` by a double loop over all pairs.
    fn double_loop(chi: &DirichletCharacter, k: u32, n: usize) -> Rational {
        let mut acc = Rational::zero();
        for m in 1..=n {
            for d in 1..=n {
                if m * d == n {
                    acc += chi.value(d as i64) * Rational::from(d as i64).pow(k as i32 - 1);
                }
            }
        }
        acc
    }

    #[test]
    fn f_examples() {
        let f2 = f_series(2, 5).unwrap();
        assert_eq!(f2.coeffs(), &[q(0, 1), q(1, 1), q(3, 1), q(4, 1), q(7, 1)]);
        assert_eq!(f_series(1, 7).unwrap().coeffs()[6], q(4, 1));
        assert!(f_series(3, 4).unwrap().coeffs()[0].is_zero());
    }

    #[test]
    fn g_constants() {
        assert_eq!(g_series(2, 3).unwrap().coeffs()[..2], [q(-1, 24), q(1, 1)]);
        assert_eq!(g_series(4, 1).unwrap().coeffs()[0], q(1, 240));
        assert_eq!(g_series(6, 1).unwrap().coeffs()[0], q(-1, 504));
        assert!(g_series(3, 5).is_err());
        assert!(g_series(0, 5).is_err());
    }

    #[test]
    fn chi_examples() {
        let chi3 = CharacterName::Chi3.character();
        let s = g_chi_series(&chi3, 1, 8).unwrap();
        let expect = [
            q(1, 6),
            q(1, 1),
            q(0, 1),
            q(1, 1),
            q(1, 1),
            q(0, 1),
            q(0, 1),
            q(2, 1),
        ];
        assert_eq!(s.coeffs(), &expect);
        assert_eq!(
            g_chi_series(&CharacterName::Chi4.character(), 1, 1)
                .unwrap()
                .coeffs()[0],
            q(1, 4)
        );
        assert!(matches!(
            g_chi_series(&chi3, 2, 5),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn generator_parity_guard() {
        assert!(Generator::new(2, CharacterName::Chi4, 1).is_err());
        assert!(Generator::new(1, CharacterName::Trivial, 1).is_err());
        assert!(Generator::new(3, CharacterName::Chi3, 0).is_err());
        for w in 1..10 {
            assert_eq!(
                Generator::new(w, CharacterName::Chi3, 1).is_ok(),
                w % 2 == 1
            );
            assert_eq!(
                Generator::new(w, CharacterName::Trivial, 1).is_ok(),
                w % 2 == 0
            );
        }
    }

    #[test]
    fn coefficients_match_double_loop() {
        let order = 201;
        for name in [
            CharacterName::Trivial,
            CharacterName::Chi3,
            CharacterName::Chi4,
        ] {
            let chi = name.character();
            for w in 1..=6u32 {
                let Ok(g) = Generator::new(w, name, 1) else {
                    continue;
                };
                let s = g.series(order).unwrap();
                for n in 1..order {
                    assert_eq!(s.coeffs()[n], double_loop(&chi, w, n), "{g} n={n}");
                }
            }
        }
    }

    #[test]
    fn dilated_g2_reindexes() {
        let g = gen(2, CharacterName::Trivial, 4).series(40).unwrap();
        let base = g_series(2, 40).unwrap();
        for n in 0..40 {
            let expect = if n % 4 == 0 {
                base.coeffs()[n / 4].clone()
            } else {
                Rational::zero()
            };
            assert_eq!(g.coeffs()[n], expect);
        }
    }

    #[test]
    fn constant_cancellation_example() {
        let e = QmfExpression::new(
            cq(-1, 8),
            vec![
                (cq(1, 1), gen(2, CharacterName::Trivial, 2)),
                (cq(-4, 1), gen(2, CharacterName::Trivial, 4)),
            ],
        );
        let s = e.rational_series(20).unwrap().unwrap();
        assert!(s.coeffs()[0].is_zero());
        assert_eq!(e.to_string(), "G_2(2tau) - 4*G_2(4tau) - 1/8");
        assert_eq!(e.level(), 4);
        assert!(e.quasimodular());
    }

    #[test]
    fn canonical_form() {
        let g1 = gen(2, CharacterName::Trivial, 1);
        let g3 = gen(1, CharacterName::Chi3, 1);
        let e = QmfExpression::new(
            cq(0, 1),
            vec![(cq(1, 1), g1), (cq(2, 1), g3), (cq(-1, 1), g1)],
        );
        assert_eq!(e.terms(), &[(cq(2, 1), g3)]);
        assert_eq!(e.level(), 3);
        assert_eq!(
            QmfExpression::constant_only(cq(3, 1)).series(4).unwrap(),
            Series::constant(cq(3, 1), 4)
        );
        // 2 G_2(2tau) - G_2(tau) is modular
        let m = QmfExpression::new(
            cq(0, 1),
            vec![
                (cq(2, 1), gen(2, CharacterName::Trivial, 2)),
                (cq(-1, 1), g1),
            ],
        );
        assert!(m.contains_g2());
        assert!(!m.quasimodular());
    }

    #[test]
    fn json_schema() {
        let e = QmfExpression::new(
            cq(-1, 18),
            vec![
                (cq(-3, 1), gen(2, CharacterName::Trivial, 3)),
                (cq(1, 3), gen(2, CharacterName::Trivial, 1)),
                (cq(-1, 3), gen(1, CharacterName::Chi3, 1)),
            ],
        );
        let js = serde_json::to_value(e.to_json()).unwrap();
        let expect = serde_json::json!({
            "constant": "-1/18",
            "terms": [
                {"coeff": "-1/3", "weight": 1, "character": "chi_3_2", "dilation": 1},
                {"coeff": "1/3", "weight": 2, "character": "trivial", "dilation": 1},
                {"coeff": "-3", "weight": 2, "character": "trivial", "dilation": 3}
            ],
            "highest_weight": 2,
            "level": 3,
            "quasimodular": true
        });
        assert_eq!(js, expect);
        let back: QmfExpressionJson = serde_json::from_value(js).unwrap();
        assert_eq!(QmfExpression::from_json(&back).unwrap(), e);
    }

    fn arb_generator() -> impl Strategy<Value = Generator> {
        (0usize..3, 1u32..6, 1u32..4).prop_filter_map("parity", |(c, w, l)| {
            let name = [
                CharacterName::Trivial,
                CharacterName::Chi3,
                CharacterName::Chi4,
            ][c];
            Generator::new(w, name, l).ok()
        })
    }

    fn arb_expr() -> impl Strategy<Value = QmfExpression> {
        let coeff = prop::array::uniform4(-3i64..4).prop_map(Cyclotomic12::from_ints);
        (
            coeff.clone(),
            prop::collection::vec((coeff, arb_generator()), 0..4),
        )
            .prop_map(|(c, terms)| QmfExpression::new(c, terms))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn series_is_linear(e1 in arb_expr(), e2 in arb_expr()) {
            let lhs = e1.add(&e2).series(30).unwrap();
            let rhs = &e1.series(30).unwrap() + &e2.series(30).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
