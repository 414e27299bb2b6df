use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::automorphy::{make_fa, make_fpa, make_push, max_abs, FactorOfAutomorphy, Matrix};
use crate::error::{Error, Result};
use crate::numeric::{kappa, kappa_pole_margin, nonzero, POLE_GUARD, theta, theta2, theta_zero_margin, Nome, TruncationPolicy};

type MatrixFn = dyn Fn(Complex64) -> Result<Matrix> + Send + Sync;

/// A 2×2 matrix function `B(z)` meant to satisfy
/// `B(qz) A_source(z) = A_target(z) B(z)`.
#[derive(Clone)]
pub struct GaugeMatrix {
    label: String,
    source: FactorOfAutomorphy,
    target: FactorOfAutomorphy,
    eval: Arc<MatrixFn>,
}

impl fmt::Debug for GaugeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeMatrix")
            .field("label", &self.label)
            .field("source", &self.source.label())
            .field("target", &self.target.label())
            .finish_non_exhaustive()
    }
}

impl GaugeMatrix {
    pub fn new(
        label: impl Into<String>,
        source: FactorOfAutomorphy,
        target: FactorOfAutomorphy,
        eval: impl Fn(Complex64) -> Result<Matrix> + Send + Sync + 'static,
    ) -> Self {
        GaugeMatrix {
            label: label.into(),
            source,
            target,
            eval: Arc::new(eval),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &FactorOfAutomorphy {
        &self.source
    }

    pub fn target(&self) -> &FactorOfAutomorphy {
        &self.target
    }

    pub fn eval(&self, z: Complex64) -> Result<Matrix> {
        nonzero(z, "z")?;
        (self.eval)(z)
    }

    pub fn det(&self, z: Complex64) -> Result<Complex64> {
        let m = self.eval(z)?;
        Ok(m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
    }
}

/// Largest relative residual of `B(qz)A(z) − A'(z)B(z)` over the points.
pub fn gauge_residual(g: &GaugeMatrix, nome: Nome, points: &[Complex64]) -> Result<f64> {
    let q = nome.q();
    let mut worst = 0.0f64;
    for &z in points {
        let lhs = g.eval(q * z)? * g.source.eval(z)?;
        let rhs = g.target.eval(z)? * g.eval(z)?;
        let scale = max_abs(lhs.iter()).max(max_abs(rhs.iter())).max(1.0);
        worst = worst.max(max_abs((lhs - rhs).iter()) / scale);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetSpread {
    /// Determinant at the first point.
    pub reference: Complex64,
    /// `max_i |det(z_i) − det(z_0)| / max(|det(z_0)|, 1)`.
    pub spread: f64,
}

/// How far `det B(z)` is from constant over the points.
pub fn det_spread(g: &GaugeMatrix, points: &[Complex64]) -> Result<DetSpread> {
    let Some((&z0, rest)) = points.split_first() else {
        return Err(Error::InvalidArgument("det_spread needs at least one point".into()));
    };
    let reference = g.det(z0)?;
    let scale = reference.norm().max(1.0);
    let mut spread = 0.0f64;
    for &z in rest {
        spread = spread.max((g.det(z)? - reference).norm() / scale);
    }
    Ok(DetSpread { reference, spread })
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn require_margin(what: &'static str, ratio: f64) -> Result<()> {
    if ratio <= 1e-12 {
        Err(Error::NearZero { what, ratio })
    } else {
        Ok(())
    }
}

/// `c_a = θ(1)²θ(−1)²θ(u)² / (4a θ(−a/u) θ(−ua))`.
pub fn c_a(a: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    nonzero(a, "a")?;
    let u = nome.u();
    for (what, w) in [("θ(−a/u)", -a / u), ("θ(−ua)", -u * a)] {
        require_margin(what, theta_zero_margin(w, nome, pol)?)?;
    }
    let t = |w: Complex64| theta(w, nome, pol);
    let num = (t(c(1.0))? * t(c(-1.0))? * t(u)?).powi(2);
    Ok(num / (4.0 * a * t(-a / u)? * t(-u * a)?))
}

/// `c_a` from its value `a^{−1}κ(a, −u)κ(a^{−1}, −u) = −det B(−u)`.
pub fn c_a_via_kappa(a: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    nonzero(a, "a")?;
    let u = nome.u();
    Ok(kappa(a, -u, nome, pol)? * kappa(a.inv(), -u, nome, pol)? / a)
}

/// The gauge matrix from `F'_a` to `F_a`:
///
/// ```text
/// B(z) = [[ κ_a(z), (c_a − a^{−1}κ_a(z)κ_{1/a}(z)) / θ(z) ],
///         [ θ(z),   −a^{−1}κ_{1/a}(z)                    ]]
/// ```
///
/// The (1,2) entry has a removable singularity at the zeros of θ; evaluation
/// there is refused rather than taken as a limit.
pub fn build_b(a: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<GaugeMatrix> {
    nonzero(a, "a")?;
    for (name, x) in [("a", a), ("1/a", a.inv())] {
        if kappa_pole_margin(x, nome) < POLE_GUARD {
            return Err(Error::domain("B", format!("{name} = {x} is too close to q^ℤ")));
        }
    }
    let ca = c_a(a, nome, pol)?;
    let pol = *pol;
    let b = GaugeMatrix::new(
        format!("B[{a}]"),
        make_fpa(a, nome)?,
        make_fa(a, nome)?,
        move |z| {
            let ratio = theta_zero_margin(z, nome, &pol)?;
            require_margin("θ(z)", ratio)?;
            let th = theta(z, nome, &pol)?;
            let ka = kappa(a, z, nome, &pol)?;
            let kb = kappa(a.inv(), z, nome, &pol)? / a;
            Ok(Matrix::from_row_slice(2, 2, &[ka, (ca - ka * kb) / th, th, -kb]))
        },
    );
    Ok(b)
}

/// Constants of the matrix `C`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CConstants {
    /// `λ = θ(1, q²) θ(q, q²) / θ(u, q)`
    pub lambda: Complex64,
    /// `c = λ θ(1) θ(−1)`
    pub c: Complex64,
    /// `½θ(1)θ(−1) = κ(−1, −u)`
    pub half_theta_pm: Complex64,
}

pub fn c_constants(nome: Nome, pol: &TruncationPolicy) -> Result<CConstants> {
    let u = nome.u();
    let q = nome.q();
    let lambda = theta2(c(1.0), nome, pol)? * theta2(q, nome, pol)? / theta(u, nome, pol)?;
    let pm = theta(c(1.0), nome, pol)? * theta(c(-1.0), nome, pol)?;
    Ok(CConstants {
        lambda,
        c: lambda * pm,
        half_theta_pm: pm / 2.0,
    })
}

/// `c` from `c/2 = −λ κ(−1, −u^{−1})`.
pub fn c_via_kappa(nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    let k = c_constants(nome, pol)?;
    Ok(-2.0 * k.lambda * kappa(c(-1.0), -nome.u().inv(), nome, pol)?)
}

/// The gauge matrix from `π_*L'` to `F'_1`:
///
/// ```text
/// C(z) = [[ λ(½θ(1)θ(−1) − κ(−1,−z)) / θ(−uz, q²), λ(½θ(1)θ(−1) + κ(−1,−z)) / θ(−z/u, q²) ],
///         [ θ(−z/u, q²),                         −θ(−uz, q²)                           ]]
/// ```
pub fn build_c(nome: Nome, pol: &TruncationPolicy) -> Result<GaugeMatrix> {
    let k = c_constants(nome, pol)?;
    let u = nome.u();
    let pol = *pol;
    let sq = nome.squared();
    Ok(GaugeMatrix::new(
        "C",
        make_push(nome),
        make_fpa(c(1.0), nome)?,
        move |z| {
            for (what, w) in [("θ(−uz, q²)", -u * z), ("θ(−z/u, q²)", -z / u)] {
                require_margin(what, theta_zero_margin(w, sq, &pol)?)?;
            }
            let c21 = theta2(-z / u, nome, &pol)?;
            let c22 = -theta2(-u * z, nome, &pol)?;
            let km = kappa(c(-1.0), -z, nome, &pol)?;
            let c11 = k.lambda * (k.half_theta_pm - km) / (-c22);
            let c12 = k.lambda * (k.half_theta_pm + km) / c21;
            Ok(Matrix::from_row_slice(2, 2, &[c11, c12, c21, c22]))
        },
    ))
}
