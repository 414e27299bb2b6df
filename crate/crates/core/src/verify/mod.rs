//! Named check suites shared by the command-line tool and the acceptance
//! tests.
//!
//! A suite is a list of [`CheckRecord`]s, each either a maximum relative
//! residual against a tolerance or an exact coefficient comparison. Records
//! are sorted by id and depend only on the [`VerifyConfig`], so two runs with
//! the same seed serialize identically.

mod bundles;
mod exact;
mod modular;
mod numeric;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{IdentityId, TruncationPolicy};
use crate::qexact::ExactOutcome;

pub use bundles::bundle_checks;
pub use exact::exact_checks;
pub use modular::{modular_checks, random_words, TAU_PROBES};
pub use numeric::{degenerate_checks, identity_check, numeric_checks};

pub const DEFAULT_SAMPLES: usize = 100;
/// In powers of `u`, i.e. `q`-order 40.
pub const DEFAULT_EXACT_ORDER: usize = 80;
pub const NUMERIC_TOL: f64 = 1e-9;
pub const BUNDLE_TOL: f64 = 1e-9;
pub const MODULAR_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Numeric,
    Exact,
    Bundles,
    Modular,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [SuiteKind::Numeric, SuiteKind::Exact, SuiteKind::Bundles, SuiteKind::Modular];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteKind::Numeric => "numeric",
            SuiteKind::Exact => "exact",
            SuiteKind::Bundles => "bundles",
            SuiteKind::Modular => "modular",
        }
    }
}

/// What `verify` runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Kind(SuiteKind),
    /// One registry identity (FOR1 and FOR2 also get their exact check).
    Identity(IdentityId),
    /// A single named check from one of the suites, e.g. `CONJ1`.
    Check(String),
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "all" {
            return Ok(Suite::All);
        }
        if let Some(k) = SuiteKind::ALL.iter().find(|k| k.as_str() == lower) {
            return Ok(Suite::Kind(*k));
        }
        if let Ok(id) = s.parse::<IdentityId>() {
            return Ok(Suite::Identity(id));
        }
        let upper = s.to_ascii_uppercase();
        if KNOWN_CHECKS.contains(&upper.as_str()) {
            return Ok(Suite::Check(upper));
        }
        Err(Error::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::All => f.write_str("all"),
            Suite::Kind(k) => f.write_str(k.as_str()),
            Suite::Identity(id) => f.write_str(id.as_str()),
            Suite::Check(c) => f.write_str(c),
        }
    }
}

/// Check ids (other than registry identities) addressable as a suite.
const KNOWN_CHECKS: &[&str] = &[
    "SQRT_BRANCH", "THETA_ZERO", "THETA_QUASI", "KAPPA_TRUNC", "DTHETA_FD", "LIMIT_THETA", "LIMIT_KAPPA",
    "POLE_GUARD", "FOR1_EXACT", "FOR2_EXACT", "T3_COUNTS", "DOUBLE_SUM", "ANDREWS", "EXACT_XCHECK", "SECTIONS",
    "CONJ1", "CONJ2", "DET_B", "DET_C", "C_A_KAPPA", "C_KAPPA", "BEZOUT", "BEZOUT_RADIAL", "MU", "CHI_MULT",
    "K_GAMMA_ID", "K_GAMMA_MODULUS", "ACT_COMPOSE", "THETA_COCYCLE", "PHI_PLUGBACK", "PHI_RADIAL", "DIV_CONTROL",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub exact_order: usize,
    pub pol: TruncationPolicy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            samples: DEFAULT_SAMPLES,
            exact_order: DEFAULT_EXACT_ORDER,
            pol: TruncationPolicy::default(),
        }
    }
}

impl VerifyConfig {
    /// Per-check seed, so that adding or removing a check does not reshuffle
    /// the points of the others.
    pub fn sub_seed(&self, check: &str) -> u64 {
        // FNV-1a over the id, mixed with the base seed by a SplitMix64 round
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in check.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        let mut x = h ^ self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: SuiteKind,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rel_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactOutcome>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    /// Passes when `max_rel < tol` (a NaN never passes).
    pub fn residual(id: impl Into<String>, suite: SuiteKind, samples: usize, tol: f64, max_rel: f64) -> Self {
        CheckRecord {
            id: id.into(),
            suite,
            samples,
            tolerance: Some(tol),
            max_rel_residual: Some(max_rel),
            exact: None,
            passed: max_rel < tol,
            note: None,
        }
    }

    pub fn exact(id: impl Into<String>, outcome: ExactOutcome) -> Self {
        CheckRecord {
            id: id.into(),
            suite: SuiteKind::Exact,
            samples: 1,
            tolerance: None,
            max_rel_residual: None,
            passed: outcome.passed(),
            exact: Some(outcome),
            note: None,
        }
    }

    pub fn flag(id: impl Into<String>, suite: SuiteKind, samples: usize, passed: bool, note: Option<String>) -> Self {
        CheckRecord {
            id: id.into(),
            suite,
            samples,
            tolerance: None,
            max_rel_residual: None,
            exact: None,
            passed,
            note,
        }
    }

    pub fn failed(id: impl Into<String>, suite: SuiteKind, err: &Error) -> Self {
        Self::flag(id, suite, 0, false, Some(err.to_string()))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Runs a check body, turning an error into a failed record.
pub(crate) fn guarded(id: &str, suite: SuiteKind, body: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    body().unwrap_or_else(|e| CheckRecord::failed(id, suite, &e))
}

/// Tracks the worst relative residual over a batch.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Worst {
    pub max: f64,
    pub count: usize,
}

impl Worst {
    pub fn push(&mut self, r: f64) {
        self.count += 1;
        if r > self.max || r.is_nan() {
            self.max = r;
        }
    }
}

pub(crate) fn rel(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Runs the suite; records come back sorted by id.
pub fn run_suite(suite: &Suite, cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut records = match suite {
        Suite::All => SuiteKind::ALL.iter().flat_map(|k| run_kind(*k, cfg)).collect(),
        Suite::Kind(k) => run_kind(*k, cfg),
        Suite::Identity(id) => {
            let mut out = vec![identity_check(*id, cfg)];
            match id {
                IdentityId::For1 | IdentityId::For2 => {
                    let name = format!("{}_EXACT", id.as_str());
                    out.extend(exact_checks(cfg).into_iter().filter(|r| r.id == name));
                }
                IdentityId::Sqrt => {
                    out.extend(numeric_checks(cfg).into_iter().filter(|r| r.id == "SQRT_BRANCH"));
                }
                _ => {}
            }
            out
        }
        Suite::Check(name) => SuiteKind::ALL
            .iter()
            .flat_map(|k| run_kind(*k, cfg))
            .filter(|r| &r.id == name)
            .collect(),
    };
    records.sort_by(|a, b| a.id.cmp(&b.id));
    records
}

fn run_kind(kind: SuiteKind, cfg: &VerifyConfig) -> Vec<CheckRecord> {
    match kind {
        SuiteKind::Numeric => {
            let mut v = numeric_checks(cfg);
            v.extend(degenerate_checks(cfg));
            v
        }
        SuiteKind::Exact => exact_checks(cfg),
        SuiteKind::Bundles => bundle_checks(cfg),
        SuiteKind::Modular => modular_checks(cfg),
    }
}
