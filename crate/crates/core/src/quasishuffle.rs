//! The quasi-shuffle algebra on words over the alphabet `N^2`, with
//! `(k1,r1) <> (k2,r2) = (k1+k2, r1+r2)`, and its evaluation as q-series.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_bigint::BigInt;

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::macmahon::{h_series, u_series, MultiIndex};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    k: u32,
    r: u32,
}

impl Letter {
    pub fn new(k: u32, r: u32) -> Result<Self> {
        if k == 0 || r == 0 {
            return Err(Error::InvalidArgument(format!(
                "letter ({k},{r}) needs positive entries"
            )));
        }
        Ok(Letter { k, r })
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn r(self) -> u32 {
        self.r
    }

    pub fn diamond(self, other: Letter) -> Letter {
        Letter {
            k: self.k + other.k,
            r: self.r + other.r,
        }
    }

    /// `a <> a <> ... <> a` with `n` factors.
    pub fn diamond_power(self, n: u32) -> Letter {
        Letter {
            k: self.k * n,
            r: self.r * n,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    /// The word `a a ... a` of length `n`.
    pub fn repeat(a: Letter, n: usize) -> Self {
        Word(vec![a; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multi_index(&self) -> MultiIndex {
        MultiIndex::new(
            self.0.iter().map(|l| l.k).collect(),
            self.0.iter().map(|l| l.r).collect(),
        )
        .expect("letters are valid")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let bad = || Error::Parse(format!("bad word {s:?}"));
        let mut letters = Vec::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(bad)?;
            let (k, r) = body.split_once(',').ok_or_else(bad)?;
            let k = k.trim().parse().map_err(|_| bad())?;
            let r = r.trim().parse().map_err(|_| bad())?;
            letters.push(Letter::new(k, r)?);
        }
        Ok(Word(letters))
    }
}

/// Finite rational combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShuffleSum {
    terms: BTreeMap<Word, Rational>,
}

impl ShuffleSum {
    pub fn zero() -> Self {
        ShuffleSum::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ShuffleSum {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }
}

impl Serialize for ShuffleSum {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            word: String,
            coeff: String,
        }
        let list: Vec<Entry> = self
            .terms
            .iter()
            .map(|(w, c)| Entry {
                word: w.to_string(),
                coeff: c.to_string(),
            })
            .collect();
        list.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ShuffleSum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            word: String,
            coeff: String,
        }
        let list = Vec::<Entry>::deserialize(de)?;
        let mut out = ShuffleSum::zero();
        for e in list {
            let w: Word = e.word.parse().map_err(D::Error::custom)?;
            let c: Rational = e
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", e.coeff)))?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

impl fmt::Display for ShuffleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Quasi-shuffle of two words, all coefficients being positive integers.
fn word_product(
    u: &[Letter],
    v: &[Letter],
    memo: &mut BTreeMap<(usize, usize), ShuffleSum>,
) -> ShuffleSum {
    // memo key is the pair of suffix lengths of the two fixed outer words
    let key = (u.len(), v.len());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let out = if u.is_empty() {
        ShuffleSum::word(Word(v.to_vec()))
    } else if v.is_empty() {
        ShuffleSum::word(Word(u.to_vec()))
    } else {
        let (a1, w1) = (u[0], &u[1..]);
        let (a2, w2) = (v[0], &v[1..]);
        let mut out = ShuffleSum::zero();
        for (head, part) in [
            (a1, word_product(w1, v, memo)),
            (a2, word_product(u, w2, memo)),
            (a1.diamond(a2), word_product(w1, w2, memo)),
        ] {
            for (w, c) in part.terms {
                let mut letters = Vec::with_capacity(w.len() + 1);
                letters.push(head);
                letters.extend(w.0);
                out.add_term(Word(letters), c);
            }
        }
        out
    };
    memo.insert(key, out.clone());
    out
}

/// Bilinear extension of the quasi-shuffle product.
pub fn quasi_shuffle(u: &ShuffleSum, v: &ShuffleSum) -> ShuffleSum {
    let mut out = ShuffleSum::zero();
    for (w1, c1) in &u.terms {
        for (w2, c2) in &v.terms {
            let c = c1 * c2;
            let mut memo = BTreeMap::new();
            for (w, m) in word_product(&w1.0, &w2.0, &mut memo).terms {
                out.add_term(w, &m * &c);
            }
        }
    }
    out
}

/// Coefficients of `X^0 .. X^T` in
/// `exp_*( sum_{n >= 1} (-1)^{n+1}/n a^{<>n} X^n )`, computed by truncated
/// exponentiation in the quasi-shuffle algebra.
pub fn exp_letter(a: Letter, t_max: usize) -> Vec<ShuffleSum> {
    let log: Vec<ShuffleSum> = (0..=t_max)
        .map(|n| {
            if n == 0 {
                return ShuffleSum::zero();
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let c = Rational::new(sign, n as i64).expect("n >= 1");
            ShuffleSum::term(Word::letter(a.diamond_power(n as u32)), c)
        })
        .collect();
    let mul = |x: &[ShuffleSum], y: &[ShuffleSum]| -> Vec<ShuffleSum> {
        let mut out = vec![ShuffleSum::zero(); t_max + 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(t_max + 1 - i) {
                if !yj.is_zero() {
                    out[i + j] = out[i + j].add(&quasi_shuffle(xi, yj));
                }
            }
        }
        out
    };
    let mut result: Vec<ShuffleSum> = vec![ShuffleSum::zero(); t_max + 1];
    result[0] = ShuffleSum::one();
    // log^m / m!, accumulated term by term; log has no X^0 part so m <= T
    let mut power = result.clone();
    for m in 1..=t_max {
        power = mul(&power, &log)
            .into_iter()
            .map(|s| s.scale(&Rational::new(1, m as i64).expect("m >= 1")))
            .collect();
        for (r, p) in result.iter_mut().zip(&power) {
            *r = r.add(p);
        }
    }
    result
}

/// Image under the map sending a word to its `h`-series.
pub fn evaluate(s: &ShuffleSum, a: &Rational, order: usize) -> Series<Rational> {
    let mut out = Series::zero(order);
    for (w, c) in &s.terms {
        out.add_scaled_shifted(&h_series(&w.multi_index(), a, order), c, 0);
    }
    out
}

/// Integer partition with non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `(s, m_s)` for each distinct part `s`, in decreasing `s`.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((s, m)) if *s == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All partitions of `n` in lexicographically decreasing order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coefficients `prod_s (1/m_s!) ((-1)^{s+1}/s)^{m_s}` expressing `U_{t,k,r}`
/// as a polynomial in the `U_{sk,sr}`, one entry per partition of `t`.
pub fn isobaric_expansion(t: u32) -> Vec<(Partition, Rational)> {
    Partition::all(t)
        .into_iter()
        .map(|lambda| {
            let mut c = Rational::one();
            for (s, m) in lambda.multiplicities() {
                let sign = if s % 2 == 1 { 1 } else { -1 };
                let base = Rational::new(sign, i64::from(s)).expect("s >= 1");
                c *= &base.pow(m as i32);
                c *= &Rational::from(BigInt::from(factorial(m as u64)))
                    .recip()
                    .expect("nonzero");
            }
            (lambda, c)
        })
        .collect()
}

/// `U_{t,k,r}(a; q)` rebuilt from the single-letter series `U_{sk,sr}(a; q)`.
pub fn isobaric_series(
    t: u32,
    k: u32,
    r: u32,
    a: &Rational,
    order: usize,
) -> Result<Series<Rational>> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidArgument(
            "indices k and r must be positive".into(),
        ));
    }
    if t == 0 {
        return Ok(Series::one(order));
    }
    let singles: Vec<Series<Rational>> = (1..=t)
        .map(|s| u_series(1, s * k, s * r, a, order))
        .collect::<Result<_>>()?;
    let mut out = Series::zero(order);
    for (lambda, c) in isobaric_expansion(t) {
        let mut prod = Series::one(order);
        for (s, m) in lambda.multiplicities() {
            prod = prod.mul(&singles[s as usize - 1].pow(m as u32));
        }
        out.add_scaled_shifted(&prod, &c, 0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(k: u32, r: u32) -> Letter {
        Letter::new(k, r).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Full expansion of the product of two words as a sum over
    /// quasi-shuffle interleavings, independent of the recursion.
    fn stuffle_oracle(u: &[Letter], v: &[Letter]) -> BTreeMap<Word, i64> {
        // each output position takes a letter from u, from v, or the
        // diamond of the next letters of both
        fn go(u: &[Letter], v: &[Letter], cur: &mut Vec<Letter>, out: &mut BTreeMap<Word, i64>) {
            if u.is_empty() && v.is_empty() {
                *out.entry(Word(cur.clone())).or_insert(0) += 1;
                return;
            }
            if let Some((&a, rest)) = u.split_first() {
                cur.push(a);
                go(rest, v, cur, out);
                cur.pop();
            }
            if let Some((&b, rest)) = v.split_first() {
                cur.push(b);
                go(u, rest, cur, out);
                cur.pop();
            }
            if let (Some((&a, ru)), Some((&b, rv))) = (u.split_first(), v.split_first()) {
                cur.push(a.diamond(b));
                go(ru, rv, cur, out);
                cur.pop();
            }
        }
        let mut out = BTreeMap::new();
        go(u, v, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn unit_and_two_letters() {
        let w = ShuffleSum::word(Word::new(vec![l(1, 2), l(3, 1)]));
        assert_eq!(quasi_shuffle(&ShuffleSum::one(), &w), w);
        assert_eq!(quasi_shuffle(&w, &ShuffleSum::one()), w);
        let p = quasi_shuffle(
            &ShuffleSum::word(Word::letter(l(1, 1))),
            &ShuffleSum::word(Word::letter(l(2, 3))),
        );
        let mut expect = ShuffleSum::zero();
        expect.add_term(Word::new(vec![l(1, 1), l(2, 3)]), Rational::one());
        expect.add_term(Word::new(vec![l(2, 3), l(1, 1)]), Rational::one());
        expect.add_term(Word::letter(l(3, 4)), Rational::one());
        assert_eq!(p, expect);
    }

    #[test]
    fn matches_interleaving_oracle() {
        let u = [l(1, 1), l(2, 1), l(1, 3)];
        let v = [l(2, 2), l(1, 1)];
        let got = quasi_shuffle(
            &ShuffleSum::word(Word::new(u.to_vec())),
            &ShuffleSum::word(Word::new(v.to_vec())),
        );
        let oracle = stuffle_oracle(&u, &v);
        assert_eq!(got.len(), oracle.len());
        for (w, c) in oracle {
            assert_eq!(got.coeff(&w), Rational::from(c));
        }
    }

    #[test]
    fn associativity_example() {
        let a = ShuffleSum::word(Word::letter(l(1, 1)));
        let b = ShuffleSum::word(Word::letter(l(2, 2)));
        assert_eq!(
            quasi_shuffle(&quasi_shuffle(&a, &a), &b),
            quasi_shuffle(&a, &quasi_shuffle(&a, &b))
        );
    }

    #[test]
    fn exp_letter_gives_repeated_words() {
        for a in [l(1, 1), l(2, 1), l(3, 2)] {
            let coeffs = exp_letter(a, 6);
            assert_eq!(coeffs[0], ShuffleSum::one());
            for (j, c) in coeffs.iter().enumerate() {
                assert_eq!(*c, ShuffleSum::word(Word::repeat(a, j)), "a={a} j={j}");
            }
        }
    }

    #[test]
    fn word_round_trip() {
        let w: Word = "(1,1)(2,3)".parse().unwrap();
        assert_eq!(w, Word::new(vec![l(1, 1), l(2, 3)]));
        assert_eq!(w.to_string(), "(1,1)(2,3)");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("(0,1)".parse::<Word>().is_err());
        assert!("(1;1)".parse::<Word>().is_err());
    }

    #[test]
    fn shuffle_sum_json() {
        let mut s = ShuffleSum::term(Word::letter(l(2, 2)), q(-1, 2));
        s.add_term(Word::new(vec![l(1, 1), l(1, 1)]), Rational::one());
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(
            js,
            r#"[{"word":"(1,1)(1,1)","coeff":"1"},{"word":"(2,2)","coeff":"-1/2"}]"#
        );
        assert_eq!(serde_json::from_str::<ShuffleSum>(&js).unwrap(), s);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            evaluate(&ShuffleSum::one(), &Rational::from(3), 6),
            Series::one(6)
        );
        let s = evaluate(
            &ShuffleSum::word(Word::letter(l(1, 1))),
            &Rational::from(-2),
            8,
        );
        let sigma: Vec<Rational> = (0..8i64)
            .map(|n| Rational::from((1..=n).filter(|d| n % d == 0).sum::<i64>()))
            .collect();
        assert_eq!(s.coeffs(), &sigma[..]);
    }

    #[test]
    fn partitions_in_decreasing_order() {
        let p4: Vec<String> = Partition::all(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        let counts: Vec<usize> = (0..10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn isobaric_small() {
        let show = |t| -> Vec<(String, Rational)> {
            isobaric_expansion(t)
                .into_iter()
                .map(|(p, c)| (p.to_string(), c))
                .collect()
        };
        assert_eq!(show(1), [("(1)".to_string(), q(1, 1))]);
        assert_eq!(
            show(2),
            [
                ("(2)".to_string(), q(-1, 2)),
                ("(1,1)".to_string(), q(1, 2))
            ]
        );
        assert_eq!(
            show(3),
            [
                ("(3)".to_string(), q(1, 3)),
                ("(2,1)".to_string(), q(-1, 2)),
                ("(1,1,1)".to_string(), q(1, 6))
            ]
        );
        for t in 1..=8 {
            for (p, _) in isobaric_expansion(t) {
                let weight: u32 = p.multiplicities().iter().map(|&(s, m)| s * m as u32).sum();
                assert_eq!(weight, t);
            }
        }
    }

    #[test]
    fn isobaric_reconstruction() {
        for a in [-2i64, 0, 1] {
            let a = Rational::from(a);
            for t in 1..=4u32 {
                assert_eq!(
                    isobaric_series(t, 2, 1, &a, 30).unwrap(),
                    u_series(t as usize, 2, 1, &a, 30).unwrap()
                );
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((1u32..3, 1u32..3), 0..=3)
            .prop_map(|v| Word::new(v.into_iter().map(|(k, r)| l(k, r)).collect()))
    }

    fn arb_sum() -> impl Strategy<Value = ShuffleSum> {
        prop::collection::vec((arb_word(), -3i64..4), 1..=3).prop_map(|v| {
            let mut s = ShuffleSum::zero();
            for (w, c) in v {
                s.add_term(w, Rational::from(c));
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn commutative_and_associative(u in arb_sum(), v in arb_sum(), w in arb_sum()) {
            prop_assert_eq!(quasi_shuffle(&u, &v), quasi_shuffle(&v, &u));
            prop_assert_eq!(quasi_shuffle(&quasi_shuffle(&u, &v), &w), quasi_shuffle(&u, &quasi_shuffle(&v, &w)));
        }
    }
}
