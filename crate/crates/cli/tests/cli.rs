use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macmahon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn expand_u_divisor_sums() {
    let o = run(&[
        "expand", "u", "--t", "1", "--k", "1", "--r", "1", "--a", "-2", "--order", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q + 3*q^2 + 4*q^3 + 7*q^4 + O(q^5)");
}

#[test]
fn expand_product_text() {
    let o = run(&[
        "expand", "product", "--a", "0", "--k", "1", "--r", "1", "--order", "9", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "1 + q + q^2 + 2*q^3 + 3*q^4 + 4*q^5 + 5*q^6 + 7*q^7 + 10*q^8 + O(q^9)"
    );
}

#[test]
fn expand_u_empty_index() {
    let o = run(&[
        "expand", "u", "--t", "0", "--k", "2", "--r", "1", "--a", "1", "--order", "12",
    ]);
    assert_eq!(stdout(&o).trim(), "1 + O(q^12)");
}

#[test]
fn expand_formats() {
    let o = run(&[
        "expand", "h", "--ks", "1,1", "--rs", "1,1", "--a", "-2", "--order", "4", "--format",
        "json",
    ]);
    let v = json(&o);
    assert_eq!(v["order"], 4);
    assert_eq!(v["coeffs"], serde_json::json!(["0", "0", "0", "1"]));
    let o = run(&[
        "expand",
        "eis",
        "--weight",
        "2",
        "--dilation",
        "2",
        "--order",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "n,coefficient\n0,-1/24\n1,0\n2,1\n3,0\n");
}

#[test]
fn expand_domain_and_usage_errors() {
    let o = run(&[
        "expand", "eis", "--weight", "2", "--char", "chi_3_2", "--order", "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["expand", "u", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "expand", "h", "--ks", "1,2", "--rs", "1", "--a", "0", "--order", "4",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_a0() {
    let o = run(&["decompose", "--a", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["display"], "G_2(2tau) - 4*G_2(4tau) - 1/8");
    assert_eq!(v["expression"]["constant"], "-1/8");
    assert_eq!(v["report"]["status"], "verified");
    assert_eq!(v["report"]["checked_through"], 59);
}

#[test]
fn decompose_a1() {
    let o = run(&["decompose", "--a", "1", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        v["display"],
        "-1/3*G_1(chi_3_2; tau) + 1/3*G_2(tau) - 3*G_2(3tau) - 1/18"
    );
    assert_eq!(v["expression"]["level"], 3);
}

#[test]
fn decompose_numerator() {
    let o = run(&[
        "decompose",
        "--a",
        "-1",
        "--k",
        "3",
        "--numerator",
        "0,1,0,1,0",
        "--order",
        "30",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["status"], "verified");
    let o = run(&["decompose", "--a", "1", "--k", "2", "--numerator", "1,1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["decompose", "--a", "0", "--k", "2", "--numerator", "0,1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_unsupported_a() {
    let o = run(&["decompose", "--a", "-2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported a"));
}

#[test]
fn verify_example12() {
    let o = run(&["verify", "example12", "--order", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_explicit_three_colour() {
    let o = run(&[
        "verify", "explicit", "--a", "-2", "--t", "1", "--order", "25",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS 1/(q;q)^3"));
}

#[test]
fn verify_shuffle_exp_parallel_is_deterministic() {
    let args = [
        "verify",
        "shuffle-exp",
        "--k",
        "2",
        "--r",
        "1",
        "--xorder",
        "6",
        "--order",
        "40",
    ];
    let seq = run(&args);
    let par = run(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(seq.stdout, par.stdout);
    assert_eq!(stdout(&seq).lines().count(), 5);
}

#[test]
fn verify_json_reports() {
    let o = run(&["verify", "jtp", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v[0]["status"], "verified");
    assert_eq!(v[0]["checked_through"], 19);
    assert!(v[0]["witness"].is_null());
}

#[test]
fn verify_unknown_suite() {
    let o = run(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_verified() {
    let o = run(&[
        "scan",
        "--t",
        "2",
        "--k",
        "1",
        "--r",
        "1",
        "--a",
        "1",
        "--mod",
        "8",
        "--step",
        "8",
        "--residue",
        "5",
        "--max",
        "300",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified through 300"));
    let o = run(&[
        "scan",
        "--t",
        "1",
        "--k",
        "3",
        "--r",
        "1",
        "--a",
        "-2",
        "--mod",
        "7",
        "--step",
        "7",
        "--residue",
        "2",
        "--max",
        "300",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn scan_counterexample() {
    let o = run(&[
        "scan",
        "--t",
        "1",
        "--k",
        "1",
        "--r",
        "1",
        "--a",
        "-2",
        "--mod",
        "2",
        "--step",
        "1",
        "--residue",
        "0",
        "--max",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "counterexample");
    assert_eq!(v["witness"], 1);
}

#[test]
fn scan_usage_errors() {
    let base = [
        "scan", "--t", "2", "--k", "1", "--r", "1", "--mod", "8", "--step", "8", "--max", "300",
    ];
    let o = run(&[&base[..], &["--a", "1", "--residue", "9"]].concat());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[&base[..], &["--a", "1/2", "--residue", "5"]].concat());
    assert_eq!(o.status.code(), Some(2));
}
