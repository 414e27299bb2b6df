//! `appell-kit`: run verification suites, evaluate θ and κ, print exact
//! q-series tables and modular divisibility reports.
//!
//! Exit status: 0 when everything passed, 1 when a check failed, 2 for
//! invalid input (bad flags, unknown suite, domain or guard violations).

mod complex_arg;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use appell_core::modular::{
    chi, divisibility_defects, k_gamma, zeta_sq, GammaElement, ThetaZeroIndex, MIN_IM_TAU,
};
use appell_core::numeric::{kappa, kappa_bar, theta, vartheta0, vartheta1};
use appell_core::verify::{run_suite, Suite, VerifyConfig, MODULAR_TOL};
use appell_core::{Complex64, Nome, TruncationPolicy};
use clap::{Parser, Subcommand, ValueEnum};

use complex_arg::{format_complex, parse_complex};
use report::{qseries_rows, ModularReport, RunReport, SeriesKind};

#[derive(Parser)]
#[command(name = "appell-kit", version, about = "Verification toolkit for theta and Appell functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Function {
    Theta,
    Kappa,
    KappaBar,
    Vartheta0,
    Vartheta1,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite: all, numeric, exact, bundles, modular, a registry
    /// identity such as FOR1, or a single check such as CONJ1.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, env = "APPELL_KIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = appell_core::verify::DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Exact truncation order in powers of u.
        #[arg(long, default_value_t = appell_core::verify::DEFAULT_EXACT_ORDER as u64, value_parser = clap::value_parser!(u64).range(2..))]
        order: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall time (makes the report run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate one function; complex values are written RE+IMi.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex)]
        a: Option<Complex64>,
        /// Half-nome u = q^{1/2} (theta, kappa, kappa_bar).
        #[arg(long, value_parser = parse_complex)]
        u: Option<Complex64>,
        /// Quarter-nome v with q = v⁴ (vartheta0, vartheta1).
        #[arg(long, value_parser = parse_complex)]
        v: Option<Complex64>,
    },
    /// Print exact coefficients of a q-series.
    Qseries {
        #[arg(value_enum)]
        series: SeriesKind,
        /// Number of q-powers.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the κ₀ modular defect of [[a, b], [c, d]] vanishes at the zeros of θ.
    #[command(allow_negative_numbers = true)]
    Modular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        #[arg(long, value_parser = parse_complex)]
        tau: Complex64,
        /// Zeros (τ+1)/2 + m + nτ with |m|, |n| ≤ grid.
        #[arg(long, default_value_t = 1)]
        grid: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Function {
    fn name(&self) -> &'static str {
        match self {
            Function::Theta => "theta",
            Function::Kappa => "kappa",
            Function::KappaBar => "kappa_bar",
            Function::Vartheta0 => "vartheta0",
            Function::Vartheta1 => "vartheta1",
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

enum Failure {
    Checks,
    Input(String),
}

impl From<appell_core::Error> for Failure {
    fn from(e: appell_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(format!("{e:#}"))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    use anyhow::Context;
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let pol = TruncationPolicy::default();
    match cli.command {
        Command::Verify { suite, seed, samples, order, format, out, timing } => {
            let cfg = VerifyConfig {
                seed,
                samples: samples as usize,
                exact_order: order as usize,
                pol,
            };
            let start = Instant::now();
            let records = run_suite(&suite, &cfg);
            let wall = timing.then(|| start.elapsed().as_secs_f64());
            let report = RunReport::new(&suite, &cfg, records, wall);
            let text = match format {
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_ref())?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Eval { function, z, a, u, v } => {
            let need = |x: Option<Complex64>, flag: &str| {
                x.ok_or_else(|| Failure::Input(format!("{} needs --{flag}", function.name())))
            };
            let value = match function {
                Function::Theta => theta(z, Nome::new(need(u, "u")?)?, &pol)?,
                Function::Kappa => kappa(need(a, "a")?, z, Nome::new(need(u, "u")?)?, &pol)?,
                Function::KappaBar => kappa_bar(need(a, "a")?, z, Nome::new(need(u, "u")?)?, &pol)?,
                Function::Vartheta0 => vartheta0(z, Nome::new(need(v, "v")?)?, &pol)?,
                Function::Vartheta1 => vartheta1(z, Nome::new(need(v, "v")?)?, &pol)?,
            };
            emit(&format!("{}\n", format_complex(value)), None)?;
            Ok(())
        }
        Command::Qseries { series, order, format, out } => {
            let table = qseries_rows(series, order as usize);
            let text = match format {
                Format::Json => table.to_json()?,
                Format::Csv => table.to_csv(),
            };
            emit(&text, out.as_ref())?;
            Ok(())
        }
        Command::Modular { a, b, c, d, tau, grid, format, out } => {
            let g = GammaElement::new(a, b, c, d)?;
            let gt = g.mobius(tau);
            for (name, t) in [("τ", tau), ("γτ", gt)] {
                if t.im.is_nan() || t.im < MIN_IM_TAU {
                    return Err(Failure::Input(format!(
                        "Im {name} = {:.4} is below {MIN_IM_TAU}; choose τ with a larger imaginary part",
                        t.im
                    )));
                }
            }
            let zeros = ThetaZeroIndex::grid(grid as i64);
            let defects = divisibility_defects(&g, tau, &zeros, &pol)?;
            let report = ModularReport::new(g, tau, gt, zeta_sq(&g), chi(&g), k_gamma(&g, tau)?, grid, defects, MODULAR_TOL);
            let text = match format {
                Format::Json => report.to_json()?,
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_ref())?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
