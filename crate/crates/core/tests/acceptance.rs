//! Release gate: one line per acceptance criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use appell_core::numeric::IdentityId;
use appell_core::qexact::triangular_counts_bruteforce;
use appell_core::verify::{
    bundle_checks, degenerate_checks, exact_checks, identity_check, modular_checks, CheckRecord, VerifyConfig,
};

struct Outcome {
    passed: bool,
    summary: String,
}

fn summarize(records: &[CheckRecord]) -> (bool, String) {
    let failed: Vec<String> = records
        .iter()
        .filter(|r| !r.passed)
        .map(|r| match (&r.max_rel_residual, &r.note, &r.exact) {
            (Some(m), _, _) => format!("{} ({m:.2e})", r.id),
            (_, _, Some(e)) => format!("{} ({e:?})", r.id),
            (_, Some(n), _) => format!("{} ({n})", r.id),
            _ => r.id.clone(),
        })
        .collect();
    let worst = records
        .iter()
        .filter_map(|r| r.max_rel_residual)
        .fold(0.0f64, f64::max);
    if failed.is_empty() {
        (true, format!("{} checks, worst residual {worst:.2e}", records.len()))
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    }
}

fn pick(records: Vec<CheckRecord>, ids: &[&str]) -> Vec<CheckRecord> {
    let picked: Vec<CheckRecord> = records.into_iter().filter(|r| ids.contains(&r.id.as_str())).collect();
    assert_eq!(picked.len(), ids.len(), "missing checks among {ids:?}");
    picked
}

fn timed(limit: Duration, f: impl FnOnce() -> Vec<CheckRecord>) -> Outcome {
    let start = Instant::now();
    let records = f();
    let elapsed = start.elapsed();
    let (ok, s) = summarize(&records);
    Outcome {
        passed: ok && elapsed < limit,
        summary: format!("{s}, {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    results.push((
        "1 numeric identity registry, 100 samples each, rel < 1e-9",
        timed(Duration::from_secs(60), || {
            IdentityId::ALL.iter().map(|id| identity_check(*id, &cfg)).collect()
        }),
    ));

    results.push((
        "2 exact FOR1/FOR2 at u-order 80",
        timed(Duration::from_secs(10), || pick(exact_checks(&cfg), &["FOR1_EXACT", "FOR2_EXACT"])),
    ));

    results.push(("3 triangular triples: t^3 = double sum = Andrews = r3, q-order 40", {
        let records = pick(exact_checks(&cfg), &["T3_COUNTS", "DOUBLE_SUM", "ANDREWS", "EXACT_XCHECK"]);
        let (ok, s) = summarize(&records);
        // Gauss: every m ≤ 40 is a sum of three triangular numbers
        let r3 = triangular_counts_bruteforce(41);
        let gauss = r3.counts().iter().all(|&c| c >= 1);
        Outcome {
            passed: ok && gauss,
            summary: format!("{s}, min r3(m≤40) = {}", r3.counts().iter().min().unwrap()),
        }
    }));

    results.push(("4 bundle gauge matrices, determinants, constants, Bezout pair", {
        let records = pick(
            bundle_checks(&cfg),
            &["CONJ1", "CONJ2", "DET_B", "DET_C", "C_A_KAPPA", "C_KAPPA", "BEZOUT", "SECTIONS"],
        );
        let (passed, summary) = summarize(&records);
        Outcome { passed, summary }
    }));

    results.push(("5 mu-expansion at 50 guarded samples", {
        let records = pick(bundle_checks(&cfg), &["MU"]);
        let (ok, s) = summarize(&records);
        Outcome {
            passed: ok && records[0].samples == 50,
            summary: format!("{s}, {} samples", records[0].samples),
        }
    }));

    results.push(("6 modular divisibility, characters, k_gamma, theta cocycle", {
        let records: Vec<CheckRecord> = modular_checks(&cfg)
            .into_iter()
            .filter(|r| {
                r.id.starts_with("DIV[") || ["DIV_CONTROL", "CHI_MULT", "K_GAMMA_ID", "THETA_COCYCLE"].contains(&r.id.as_str())
            })
            .collect();
        let divs = records.iter().filter(|r| r.id.starts_with("DIV[")).count();
        let (ok, s) = summarize(&records);
        Outcome {
            passed: ok && divs == 12,
            summary: format!("{s}, {divs} group elements"),
        }
    }));

    results.push(("7 degenerate limits and pole guard", {
        let (passed, summary) = summarize(&degenerate_checks(&cfg));
        Outcome { passed, summary }
    }));

    let mut all = true;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.summary);
        all &= o.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
