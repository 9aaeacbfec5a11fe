use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use macmahon_qmf::arith::CharacterName;
use macmahon_qmf::decompose::{
    decompose_ukk, verify_expression, verify_numerator, SymmetricNumerator, VerificationReport,
};
use macmahon_qmf::eisenstein::{Generator, QmfExpression};
use macmahon_qmf::identities::limit_product;
use macmahon_qmf::identities::{congruence_scan, CongruenceClaim, Report};
use macmahon_qmf::macmahon::{h_series, u_series, MultiIndex};
use macmahon_qmf::suites::{cases, SuiteParams, SUITES};
use macmahon_qmf::{Error, Rational, Series};
use rayon::prelude::*;
use serde_json::json;

const USAGE: u8 = 2;
const DISAGREE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "macmahon",
    version,
    about = "Exact MacMahon-type q-series and their Eisenstein decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a truncated q-series
    Expand {
        #[command(subcommand)]
        what: Expand,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
    },
    /// Decompose U_{k,k}(a) (or a general numerator for a = +-1) into Eisenstein series
    #[command(allow_negative_numbers = true)]
    Decompose {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        k: u32,
        /// Coefficients of x, x^2, ..., x^{2k-1} of the numerator
        #[arg(long, value_delimiter = ',')]
        numerator: Option<Vec<Rational>>,
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Run a named verification suite
    #[command(allow_negative_numbers = true)]
    Verify {
        suite: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        a: Option<Rational>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        xorder: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Scan M_{t,k,r}(a; step*n + residue) for divisibility by a modulus
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: Rational,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        residue: usize,
        #[arg(long, default_value_t = 300)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
#[command(allow_negative_numbers = true)]
enum Expand {
    /// U_{t,k,r}(a; q)
    #[command(allow_negative_numbers = true)]
    U {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: Rational,
        #[arg(long)]
        order: usize,
    },
    /// H_{k,r}(a; q) for a multi-index
    #[command(allow_negative_numbers = true)]
    H {
        #[arg(long, value_delimiter = ',')]
        ks: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        rs: Vec<u32>,
        #[arg(long)]
        a: Rational,
        #[arg(long)]
        order: usize,
    },
    /// prod 1/((1 - q^{rn})(1 + a q^n + q^{2n})^k)
    #[command(allow_negative_numbers = true)]
    Product {
        #[arg(long)]
        a: Rational,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        order: usize,
    },
    /// Eisenstein series G_w(chi; L tau)
    Eis {
        #[arg(long)]
        weight: u32,
        #[arg(long = "char", default_value = "trivial")]
        character: CharacterName,
        #[arg(long, default_value_t = 1)]
        dilation: u32,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn domain(e: Error) -> ExitCode {
    fail(DISAGREE, e)
}

fn print_series(s: &Series<Rational>, format: Format) {
    match format {
        Format::Text => println!("{s}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&s.to_json()).expect("serializable")
        ),
        Format::Csv => print!("{}", s.to_csv()),
    }
}

fn run_expand(what: Expand, format: Format) -> ExitCode {
    let series = match what {
        Expand::U { t, k, r, a, order } => u_series(t, k, r, &a, order),
        Expand::H { ks, rs, a, order } => match MultiIndex::new(ks, rs) {
            Ok(idx) => Ok(h_series(&idx, &a, order)),
            Err(e) => return fail(USAGE, e),
        },
        Expand::Product { a, k, r, order } => limit_product(k, r, &a, order),
        Expand::Eis {
            weight,
            character,
            dilation,
            order,
        } => Generator::new(weight, character, dilation).and_then(|g| g.series(order)),
    };
    match series {
        Ok(s) => {
            print_series(&s, format);
            ExitCode::SUCCESS
        }
        Err(e) => domain(e),
    }
}

fn decomposition_output(expr: &QmfExpression, rep: &VerificationReport) -> ExitCode {
    let out = json!({
        "expression": expr.to_json(),
        "display": expr.to_string(),
        "report": {
            "claim": "expression equals the defining series",
            "checked_through": rep.order_checked.saturating_sub(1),
            "status": if rep.equal { "verified" } else { "counterexample" },
            "witness": rep.first_discrepancy,
        },
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("serializable")
    );
    if rep.equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(DISAGREE)
    }
}

fn run_decompose(a: i64, k: u32, numerator: Option<Vec<Rational>>, order: usize) -> ExitCode {
    if ![0, 1, -1, 2].contains(&a) {
        return fail(
            USAGE,
            format!("unsupported a = {a}; expected one of 0, 1, -1, 2"),
        );
    }
    if k == 0 {
        return fail(USAGE, "k must be positive");
    }
    let result = match numerator {
        Some(cs) => {
            if a != 1 && a != -1 {
                return fail(USAGE, "a numerator is only supported for a = 1 or a = -1");
            }
            let sn = match SymmetricNumerator::from_coeffs(&cs, k) {
                Ok(sn) => sn,
                Err(e) => return fail(USAGE, e),
            };
            verify_numerator(&sn, a, order)
        }
        None => decompose_ukk(a, k).and_then(|e| {
            let oracle = u_series(1, k, k, &Rational::from(a), order)?;
            Ok((e.clone(), verify_expression(&e, &oracle)?))
        }),
    };
    match result {
        Ok((expr, rep)) => decomposition_output(&expr, &rep),
        Err(e) => domain(e),
    }
}

fn emit_reports(reports: &[Report], format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("serializable")
        ),
        _ => {
            for r in reports {
                println!("{r}");
            }
        }
    }
}

fn run_verify(suite: &str, params: SuiteParams, jobs: usize, format: Format) -> ExitCode {
    let Some(list) = cases(suite, &params) else {
        return fail(
            USAGE,
            format!(
                "unknown suite '{suite}'; expected one of: {}",
                SUITES.join(", ")
            ),
        );
    };
    let results: Vec<_> = if jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| {
                list.par_iter()
                    .map(|c| (c.label.clone(), c.run()))
                    .collect()
            }),
            Err(e) => return fail(USAGE, e),
        }
    } else {
        list.iter().map(|c| (c.label.clone(), c.run())).collect()
    };
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (label, res) in results {
        match res {
            Ok(r) => reports.extend(r),
            Err(e) => errors.push(format!("{label}: {e}")),
        }
    }
    emit_reports(&reports, format);
    for e in &errors {
        eprintln!("error: {e}");
    }
    if errors.is_empty() && reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(DISAGREE)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    t: usize,
    k: u32,
    r: u32,
    a: Rational,
    modulus: u64,
    step: usize,
    residue: usize,
    max: usize,
    format: Format,
) -> ExitCode {
    let Some(a) = a.to_i64() else {
        return fail(
            USAGE,
            format!("a = {a} must be an integer for a congruence scan"),
        );
    };
    let claim = match CongruenceClaim::new(t, k, r, a, modulus, step, residue) {
        Ok(c) => c,
        Err(e) => return fail(USAGE, e),
    };
    match congruence_scan(&claim, max) {
        Ok(rep) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&rep).expect("serializable")
                ),
                _ => println!("{rep}"),
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(DISAGREE)
            }
        }
        Err(e) => domain(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand { what, format } => run_expand(what, format),
        Command::Decompose {
            a,
            k,
            numerator,
            order,
        } => run_decompose(a, k, numerator, order),
        Command::Verify {
            suite,
            order,
            a,
            t,
            k,
            r,
            xorder,
            window,
            max,
            jobs,
            format,
        } => {
            let params = SuiteParams {
                order,
                a,
                t,
                k,
                r,
                xorder,
                window,
                max,
            };
            run_verify(&suite, params, jobs, format)
        }
        Command::Scan {
            t,
            k,
            r,
            a,
            modulus,
            step,
            residue,
            max,
            format,
        } => run_scan(t, k, r, a, modulus, step, residue, max, format),
    }
}
