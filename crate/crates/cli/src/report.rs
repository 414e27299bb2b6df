//! Serializable reports and their JSON/CSV renderings.

use std::fmt::Write as _;

use appell_core::modular::{FourthRoot, GammaElement, ZeroDefect};
use appell_core::qexact::{
    andrews_series, double_sum_series, triangular_gf, SpecialValues, USeries,
};
use appell_core::verify::{CheckRecord, Suite, VerifyConfig};
use appell_core::Complex64;
use clap::ValueEnum;
use serde::Serialize;

use crate::complex_arg::format_complex;

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Quotes a CSV field when needed.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub exact_order: usize,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    pub fn new(suite: &Suite, cfg: &VerifyConfig, records: Vec<CheckRecord>, wall_time_s: Option<f64>) -> Self {
        RunReport {
            command: "verify",
            suite: suite.to_string(),
            seed: cfg.seed,
            samples: cfg.samples,
            exact_order: cfg.exact_order,
            passed: !records.is_empty() && records.iter().all(|r| r.passed),
            records,
            wall_time_s,
        }
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,suite,samples,tolerance,max_rel_residual,exact,passed,note\n");
        for r in &self.records {
            let exact = r.exact.as_ref().map(|e| serde_json::to_string(e).unwrap_or_default());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                field(&r.id),
                r.suite.as_str(),
                r.samples,
                opt(&r.tolerance),
                opt(&r.max_rel_residual),
                field(&opt(&exact)),
                r.passed,
                field(&opt(&r.note)),
            );
        }
        if let Some(t) = self.wall_time_s {
            let _ = writeln!(out, "# wall_time_s={t}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SeriesKind {
    /// (Σ_{n≥0} q^{n(n+1)/2})³
    T3,
    DoubleSum,
    Andrews,
    For1Lhs,
    For1Rhs,
    For2Lhs,
    For2Rhs,
}

impl SeriesKind {
    fn name(&self) -> &'static str {
        match self {
            SeriesKind::T3 => "t3",
            SeriesKind::DoubleSum => "double_sum",
            SeriesKind::Andrews => "andrews",
            SeriesKind::For1Lhs => "for1_lhs",
            SeriesKind::For1Rhs => "for1_rhs",
            SeriesKind::For2Lhs => "for2_lhs",
            SeriesKind::For2Rhs => "for2_rhs",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SeriesRow {
    /// An integer, or `k/2` for half-integral powers of q.
    pub q_exponent: String,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Serialize)]
pub struct SeriesTable {
    pub series: &'static str,
    pub q_order: usize,
    pub rows: Vec<SeriesRow>,
}

/// Coefficients of `q^0 … q^{order−1}`. Series with odd powers of `u` also
/// list the half-integral powers `q^{k/2}`.
pub fn qseries_rows(kind: SeriesKind, order: usize) -> SeriesTable {
    let trunc = 2 * order;
    let s: USeries = match kind {
        SeriesKind::T3 => triangular_gf(trunc).pow(3),
        SeriesKind::DoubleSum => double_sum_series(trunc),
        SeriesKind::Andrews => andrews_series(trunc),
        SeriesKind::For1Lhs => SpecialValues::new(trunc).for1_sides().0,
        SeriesKind::For1Rhs => SpecialValues::new(trunc).for1_sides().1,
        SeriesKind::For2Lhs => SpecialValues::new(trunc).for2_sides().0,
        SeriesKind::For2Rhs => SpecialValues::new(trunc).for2_sides().1,
    };
    let step = if s.is_even() { 2 } else { 1 };
    let rows = s
        .coeffs()
        .iter()
        .enumerate()
        .step_by(step)
        .map(|(k, c)| SeriesRow {
            q_exponent: if k % 2 == 0 { (k / 2).to_string() } else { format!("{k}/2") },
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        })
        .collect();
    SeriesTable {
        series: kind.name(),
        q_order: order,
        rows,
    }
}

impl SeriesTable {
    pub fn to_json(&self) -> anyhow::Result<String> {
        json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("q_exponent,numerator,denominator\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.q_exponent, r.numerator, r.denominator);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ZeroRow {
    pub m: i64,
    pub n: i64,
    pub x: String,
    pub defect: String,
    pub scale: f64,
    pub rel_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ModularReport {
    pub command: &'static str,
    pub gamma: [i64; 4],
    pub tau: String,
    pub gamma_tau: String,
    pub zeta_sq: String,
    pub chi: String,
    pub k_gamma: String,
    pub grid: u8,
    pub tolerance: f64,
    pub max_rel_residual: f64,
    pub passed: bool,
    pub zeros: Vec<ZeroRow>,
}

impl ModularReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: GammaElement,
        tau: Complex64,
        gamma_tau: Complex64,
        zeta_sq: FourthRoot,
        chi: FourthRoot,
        k_gamma: Complex64,
        grid: u8,
        defects: Vec<ZeroDefect>,
        tolerance: f64,
    ) -> Self {
        let max = defects.iter().map(|d| d.rel_residual).fold(0.0f64, f64::max);
        ModularReport {
            command: "modular",
            gamma: g.entries(),
            tau: format_complex(tau),
            gamma_tau: format_complex(gamma_tau),
            zeta_sq: zeta_sq.to_string(),
            chi: chi.to_string(),
            k_gamma: format_complex(k_gamma),
            grid,
            tolerance,
            max_rel_residual: max,
            passed: max < tolerance,
            zeros: defects
                .into_iter()
                .map(|d| ZeroRow {
                    m: d.index.m,
                    n: d.index.n,
                    x: format_complex(d.x),
                    defect: format_complex(d.defect),
                    scale: d.scale,
                    rel_residual: d.rel_residual,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        json(self)
    }

    pub fn to_csv(&self) -> String {
        let [a, b, c, d] = self.gamma;
        let mut out = format!(
            "# gamma=[[{a},{b}],[{c},{d}]] tau={} gamma_tau={} zeta_sq={} chi={} k_gamma={}\nm,n,x,defect,scale,rel_residual\n",
            self.tau, self.gamma_tau, self.zeta_sq, self.chi, self.k_gamma
        );
        for z in &self.zeros {
            let _ = writeln!(out, "{},{},{},{},{},{}", z.m, z.n, z.x, z.defect, z.scale, z.rel_residual);
        }
        out
    }
}
