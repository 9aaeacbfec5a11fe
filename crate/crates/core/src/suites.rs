//! Named verification suites: each expands to a list of independent cases
//! whose reports are emitted in case order.

use crate::arith::{Polynomial, Rational};
use crate::decompose::SymmetricNumerator;
use crate::error::Result;
use crate::identities::{
    a0_family_report, a2_family_report, binomial_identity_check, congruence_scan_all,
    example_reports, explicit_identity_check, explicit_tail_vanishes, general_limit_check,
    generating_function_check, isobaric_check, jacobi_triple_product_check, limit_check,
    listed_congruences, named_products, numerator_report, shuffle_exp_check, three_colour_check,
    Report,
};

pub const SUITES: &[&str] = &[
    "example12",
    "a0-family",
    "a2-family",
    "a1-family",
    "am1-family",
    "shuffle-exp",
    "isobaric",
    "limit",
    "general-limit",
    "explicit",
    "genfun",
    "jtp",
    "binomial",
    "congruences",
];

pub const A_VALUES: [i64; 5] = [-2, -1, 0, 1, 2];

/// Optional overrides; `None` selects the suite default.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub order: Option<usize>,
    pub a: Option<Rational>,
    pub t: Option<usize>,
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub xorder: Option<usize>,
    pub window: Option<usize>,
    pub max: Option<usize>,
}

type Run = Box<dyn Fn() -> Result<Vec<Report>> + Send + Sync>;

pub struct Case {
    pub label: String,
    run: Run,
}

impl Case {
    fn new(
        label: impl Into<String>,
        run: impl Fn() -> Result<Vec<Report>> + Send + Sync + 'static,
    ) -> Self {
        Case {
            label: label.into(),
            run: Box::new(run),
        }
    }

    fn single(
        label: impl Into<String>,
        run: impl Fn() -> Result<Report> + Send + Sync + 'static,
    ) -> Self {
        Case::new(label, move || run().map(|r| vec![r]))
    }

    pub fn run(&self) -> Result<Vec<Report>> {
        (self.run)()
    }
}

fn a_values(p: &SuiteParams) -> Vec<Rational> {
    match &p.a {
        Some(a) => vec![a.clone()],
        None => A_VALUES.iter().map(|&a| Rational::from(a)).collect(),
    }
}

fn int_a_values(p: &SuiteParams) -> Vec<i64> {
    match &p.a {
        Some(a) => a.to_i64().into_iter().collect(),
        None => A_VALUES.to_vec(),
    }
}

fn up_to<T: Copy + Into<u64> + TryFrom<u64>>(fixed: Option<T>, max: u64, start: u64) -> Vec<T> {
    match fixed {
        Some(v) => vec![v],
        None => (start..=max).filter_map(|v| T::try_from(v).ok()).collect(),
    }
}

fn usizes(fixed: Option<usize>, max: usize, start: usize) -> Vec<usize> {
    match fixed {
        Some(v) => vec![v],
        None => (start..=max).collect(),
    }
}

fn poly(cs: &[i64]) -> Polynomial<Rational> {
    Polynomial::new(cs.iter().map(|&c| Rational::from(c)).collect())
}

/// Cases of a named suite, or `None` for an unknown name.
pub fn cases(name: &str, p: &SuiteParams) -> Option<Vec<Case>> {
    let mut out = Vec::new();
    match name {
        "example12" => {
            let order = p.order.unwrap_or(100);
            out.push(Case::new("example12", move || example_reports(order)));
        }
        "a0-family" | "a2-family" => {
            let order = p.order.unwrap_or(64);
            let a2 = name == "a2-family";
            let k_max = if a2 { 5 } else { 8 };
            for k in up_to(p.k, k_max, 1) {
                out.push(Case::single(format!("{name} k={k}"), move || {
                    if a2 {
                        a2_family_report(k, order)
                    } else {
                        a0_family_report(k, order)
                    }
                }));
            }
        }
        "a1-family" | "am1-family" => {
            let order = p.order.unwrap_or(48);
            let a = if name == "a1-family" { 1 } else { -1 };
            for k in up_to(p.k, 6, 1) {
                let rs: Vec<u32> = match p.r {
                    Some(r) => vec![r],
                    None => (0..k).collect(),
                };
                for r in rs {
                    out.push(Case::single(format!("{name} k={k} r={r}"), move || {
                        let sn = if r == 0 {
                            SymmetricNumerator::power(k)?
                        } else {
                            SymmetricNumerator::symmetric_pair(k, r)?
                        };
                        numerator_report(&sn, a, order)
                    }));
                }
            }
        }
        "shuffle-exp" => {
            let order = p.order.unwrap_or(40);
            let x = p.xorder.unwrap_or(6);
            let pairs = match (p.k, p.r) {
                (Some(k), Some(r)) => vec![(k, r)],
                (Some(k), None) => vec![(k, k)],
                _ => vec![(1, 1), (2, 2), (2, 1), (3, 2)],
            };
            for (k, r) in pairs {
                for a in a_values(p) {
                    out.push(Case::single(
                        format!("shuffle-exp k={k} r={r} a={a}"),
                        move || shuffle_exp_check(k, r, &a, x, order),
                    ));
                }
            }
        }
        "isobaric" => {
            let order = p.order.unwrap_or(40);
            for t in up_to(p.t.map(|t| t as u32), 6, 1) {
                for k in up_to(p.k, 2, 1) {
                    for a in a_values(p) {
                        out.push(Case::single(
                            format!("isobaric t={t} k={k} a={a}"),
                            move || isobaric_check(t, k, &a, order),
                        ));
                    }
                }
            }
        }
        "limit" => {
            let extra = p.order.unwrap_or(3);
            for t in usizes(p.t, 6, 0) {
                for k in up_to(p.k, 3, 1) {
                    for r in up_to(p.r, 3, 1) {
                        for a in a_values(p) {
                            out.push(Case::single(
                                format!("limit t={t} k={k} r={r} a={a}"),
                                move || limit_check(t, k, r, &a, extra),
                            ));
                        }
                    }
                }
            }
            out.push(Case::single("named products", named_products_report));
        }
        "general-limit" => {
            let extra = p.order.unwrap_or(3);
            let qs = [poly(&[0, 1]), poly(&[0, -2, 1]), poly(&[0, 1, 0, 1])];
            let ps = [
                poly(&[0, 1]),
                poly(&[0, 2]),
                poly(&[0, 3]),
                poly(&[0, 0, 1]),
                poly(&[0, 1, 1]),
            ];
            for pp in &ps {
                for qq in &qs {
                    for k in up_to(p.k, 2, 1).into_iter().map(i64::from) {
                        for t in usizes(p.t, 4, 1) {
                            let (pp, qq) = (pp.clone(), qq.clone());
                            out.push(Case::single(
                                format!("general-limit P={pp} Q={qq} k={k} t={t}"),
                                move || general_limit_check(&pp, &qq, t, k, extra),
                            ));
                        }
                    }
                }
            }
        }
        "explicit" => {
            let order = p.order.unwrap_or(30);
            for a in a_values(p) {
                for t in usizes(p.t, 4, 0) {
                    let a = a.clone();
                    out.push(Case::new(format!("explicit a={a} t={t}"), move || {
                        let mut reps = vec![explicit_identity_check(&a, t, order)?];
                        let tail =
                            format!("truncated sum for a={a}, t={t} unchanged by one more term");
                        reps.push(if explicit_tail_vanishes(&a, t, order)? {
                            Report::verified(tail, order - 1)
                        } else {
                            Report::counterexample(tail, order - 1, 0)
                        });
                        if a == -2 {
                            reps.push(three_colour_check(t, order)?);
                        }
                        Ok(reps)
                    }));
                }
            }
        }
        "genfun" => {
            let order = p.order.unwrap_or(15);
            let x = p.xorder.unwrap_or(8);
            for a in a_values(p) {
                out.push(Case::single(format!("genfun a={a}"), move || {
                    generating_function_check(&a, x, order)
                }));
            }
        }
        "jtp" => {
            let order = p.order.unwrap_or(20);
            let window = p.window.unwrap_or(5);
            out.push(Case::single("jtp", move || {
                jacobi_triple_product_check(order, window)
            }));
        }
        "binomial" => {
            let m = p.max.unwrap_or(12);
            out.push(Case::single("binomial", move || {
                Ok(binomial_identity_check(m, m))
            }));
        }
        "congruences" => {
            let n_max = p.max.unwrap_or(300);
            let ints = int_a_values(p);
            let claims: Vec<_> = listed_congruences()
                .into_iter()
                .filter(|c| p.a.is_none() || ints.contains(&c.a))
                .collect();
            out.push(Case::new("congruences", move || {
                congruence_scan_all(&claims, n_max)
            }));
        }
        _ => return None,
    }
    Some(out)
}

/// The four limit products against their initial coefficients.
pub fn named_products_report() -> Result<Report> {
    let known: [(&str, Vec<i64>, usize); 4] = [
        ("a", vec![1, 1, 1, 2, 3, 4, 5, 7, 10], 1),
        ("b", vec![1, 1, 2, 3, 5, 7, 11, 15, 22], 3),
        ("c", vec![1, 2, 4, 7, 12, 20, 32, 50], 1),
        ("d", vec![1, -1, 1, -2, 3, -4, 5, -7, 10, -13], 1),
    ];
    let products = named_products(101)?;
    let claim = "limit products a(n), b(n), c(n), d(n) match their initial coefficients; d(n) = (-1)^n a(n) for n <= 100";
    for ((name, s), (_, vals, step)) in products.iter().zip(&known) {
        for (i, v) in vals.iter().enumerate() {
            if s.coeff(i * step) != Some(&Rational::from(*v)) {
                return Ok(Report::counterexample(
                    format!("{claim} [{name}]"),
                    100,
                    i * step,
                ));
            }
        }
        if *step == 3 {
            if let Some(n) =
                (0..101).find(|n| n % 3 != 0 && !s.coeff(*n).expect("order 101").is_zero())
            {
                return Ok(Report::counterexample(format!("{claim} [{name}]"), 100, n));
            }
        }
    }
    let (a, d) = (&products[0].1, &products[3].1);
    for n in 0..=100 {
        let sign = Rational::from(if n % 2 == 0 { 1 } else { -1 });
        if d.coeff(n) != Some(&(a.coeff(n).expect("order 101").clone() * sign)) {
            return Ok(Report::counterexample(claim, 100, n));
        }
    }
    Ok(Report::verified(claim, 100))
}

/// Runs every case sequentially.
pub fn run_all(cases: &[Case]) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for c in cases {
        out.extend(c.run()?);
    }
    Ok(out)
}
