//! End-to-end runs of the `appell-kit` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_appell-kit"))
        .args(args)
        .env_remove("APPELL_KIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

/// Parses the `RE±IMi` form printed by `eval` and returns the modulus.
fn printed_modulus(s: &str) -> f64 {
    let s = s.trim().strip_suffix('i').expect("imaginary suffix");
    let split = s
        .char_indices()
        .skip(1)
        .filter(|&(i, ch)| (ch == '+' || ch == '-') && !s[..i].ends_with('e'))
        .map(|(i, _)| i)
        .last()
        .expect("sign between parts");
    let re: f64 = s[..split].parse().unwrap();
    let im: f64 = s[split..].parse().unwrap();
    re.hypot(im)
}

fn qseries_rows(series: &str, order: &str) -> Vec<String> {
    let o = kit(&["qseries", series, "--order", order]);
    assert!(o.status.success());
    stdout(&o).lines().skip(1).map(str::to_owned).collect()
}

#[test]
fn verify_all_passes_at_seed_7() {
    let o = kit(&["verify", "all", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = json(&o);
    assert_eq!(report["passed"], true);
    let records = report["records"].as_array().unwrap();
    for r in records {
        assert_eq!(r["passed"], true, "{r}");
    }
    let ids: Vec<&str> = records.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted, "records are sorted by id");
    for id in ["FOR1", "JAC", "QUASI", "CONJ1", "BEZOUT", "MU", "DIV_CONTROL"] {
        assert!(ids.contains(&id), "missing {id}");
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = kit(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn single_identity_suite_has_numeric_and_exact_records() {
    let o = kit(&["verify", "FOR1"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    let records = report["records"].as_array().unwrap();
    let ids: Vec<&str> = records.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["FOR1", "FOR1_EXACT"]);
    assert!(records[0]["max_rel_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(records[1]["exact"]["status"], "pass");
}

#[test]
fn csv_report_has_fixed_header() {
    let o = kit(&["verify", "exact", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("id,suite,samples,tolerance,max_rel_residual,exact,passed,note")
    );
    assert!(text.lines().count() > 2);
}

#[test]
fn eval_vanishes_at_known_zeros() {
    let theta = kit(&["eval", "theta", "--z=-0.3", "--u=0.3"]);
    assert!(theta.status.success());
    assert!(printed_modulus(&stdout(&theta)) < 1e-14);

    let kappa = kit(&["eval", "kappa", "--a=0.3", "--z=1", "--u=0.3"]);
    assert!(kappa.status.success());
    assert!(printed_modulus(&stdout(&kappa)) < 1e-14);
}

#[test]
fn eval_prints_fifteen_significant_digits() {
    let o = kit(&["eval", "vartheta0", "--z", "0.3", "--v", "0.4"]);
    assert!(o.status.success());
    let re = stdout(&o).split(['+', '-']).next().unwrap().to_owned();
    let mantissa = re.split('e').next().unwrap().replace('.', "");
    assert_eq!(mantissa.len(), 15);
}

#[test]
fn eval_rejects_nome_outside_disc() {
    let o = kit(&["eval", "theta", "--z=1", "--u=1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nome"));
}

#[test]
fn triangular_cube_coefficients() {
    let rows = qseries_rows("t3", "7");
    let coeffs: Vec<&str> = rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(coeffs, ["1", "3", "3", "4", "6", "3", "6"]);
    assert!(rows.iter().all(|r| r.ends_with(",1")));
}

#[test]
fn three_triangular_series_agree_row_for_row() {
    let t3 = qseries_rows("t3", "40");
    assert_eq!(t3.len(), 40);
    assert_eq!(qseries_rows("andrews", "40"), t3);
    assert_eq!(qseries_rows("double_sum", "40"), t3);
}

#[test]
fn for1_sides_agree() {
    assert_eq!(qseries_rows("for1_lhs", "20"), qseries_rows("for1_rhs", "20"));
    assert_eq!(qseries_rows("for2_lhs", "20"), qseries_rows("for2_rhs", "20"));
}

#[test]
fn modular_translation_report() {
    let o = kit(&["modular", "1", "2", "0", "1", "--tau", "1.5i"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["chi"], "i");
    assert_eq!(report["passed"], true);
    assert!(report["max_rel_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(report["zeros"].as_array().unwrap().len(), 9);
}

#[test]
fn modular_identity_has_zero_residuals() {
    let o = kit(&["modular", "1", "0", "0", "1", "--tau", "0.5+1.5i"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    for z in report["zeros"].as_array().unwrap() {
        assert_eq!(z["rel_residual"].as_f64(), Some(0.0), "{z}");
    }
}

#[test]
fn modular_rejects_non_members_and_low_tau() {
    let o = kit(&["modular", "1", "1", "0", "1", "--tau", "1.5i"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in Γ₁,₂"));

    let o = kit(&["modular", "0", "-1", "1", "0", "--tau", "0.05i"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify", "numeric", "--seed", "3", "--samples", "10"];
    let first = kit(&args);
    let second = kit(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_can_come_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_appell-kit"))
        .args(["verify", "SP1", "--samples", "5"])
        .env("APPELL_KIT_SEED", "11")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(json(&o)["seed"], 11);
    let explicit = kit(&["verify", "SP1", "--samples", "5", "--seed", "11"]);
    assert_eq!(o.stdout, explicit.stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&kit(&["verify", "SP1", "--samples", "5"]));
    assert!(plain.get("wall_time_s").is_none());
    let timed = json(&kit(&["verify", "SP1", "--samples", "5", "--timing"]));
    assert!(timed["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn out_flag_writes_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("appell-kit-out-{}.csv", std::process::id()));
    let o = kit(&["qseries", "t3", "--order", "5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("q_exponent,numerator,denominator\n0,1,1\n"));
}
