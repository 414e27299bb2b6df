use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{chi, k_gamma, zeta_sq, GammaElement};
use crate::error::{Error, Result};
use crate::numeric::{kappa_series, theta, theta_zero_margin, Nome, TruncationPolicy};

/// Smallest `Im τ` accepted for either τ or γτ by the divisibility checks
/// (`|u| ≤ e^{−0.1π} ≈ 0.73`).
pub const MIN_IM_TAU: f64 = 0.1;

/// `κ₀` refuses nomes with `|u|` at or above this.
pub const KAPPA0_NOME_GUARD: f64 = 0.99;

fn i() -> Complex64 {
    Complex64::i()
}

/// A point `(x, τ)` of `ℂ × ℍ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdditivePoint {
    x: Complex64,
    tau: Complex64,
}

impl AdditivePoint {
    pub fn new(x: Complex64, tau: Complex64) -> Result<Self> {
        if tau.im > 0.0 && tau.is_finite() && x.is_finite() {
            Ok(AdditivePoint { x, tau })
        } else {
            Err(Error::TauGuard { im_tau: tau.im, min: 0.0 })
        }
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// Multiplicative coordinates `(z, u) = (exp(2πix), exp(πiτ))`.
    pub fn multiplicative(&self) -> (Complex64, Complex64) {
        ((2.0 * PI * i() * self.x).exp(), (PI * i() * self.tau).exp())
    }
}

/// Selects the zero `x = (τ+1)/2 + m + nτ` of `θ(·, τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaZeroIndex {
    pub m: i64,
    pub n: i64,
}

impl ThetaZeroIndex {
    pub fn new(m: i64, n: i64) -> Self {
        ThetaZeroIndex { m, n }
    }

    pub fn point(&self, tau: Complex64) -> Complex64 {
        (tau + 1.0) / 2.0 + self.m as f64 + tau * self.n as f64
    }

    /// `{−r..r}²` in row-major order.
    pub fn grid(r: i64) -> Vec<ThetaZeroIndex> {
        (-r..=r)
            .flat_map(|m| (-r..=r).map(move |n| ThetaZeroIndex::new(m, n)))
            .collect()
    }
}

fn tau_guard(tau: Complex64, min: f64) -> Result<()> {
    if tau.im >= min && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::TauGuard { im_tau: tau.im, min })
    }
}

/// `θ(x, τ) = Σ exp(πiτn² + 2πinx)`.
pub fn theta_additive(x: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<Complex64> {
    tau_guard(tau, f64::MIN_POSITIVE)?;
    let p = AdditivePoint::new(x, tau)?;
    let (z, u) = p.multiplicative();
    theta(z, Nome::new(u)?, pol)
}

/// `κ₀(x, τ) = exp(3πiτ/4) κ((τ+1)/2, x, τ)`, evaluated as `κ(−u, z)` with
/// `u = exp(πiτ)`, `z = exp(2πix)`.
pub fn kappa0(x: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<Complex64> {
    Ok(kappa0_series(x, tau, pol)?.0)
}

/// `κ₀` and `|exp(3πiτ/4)| Σ|terms|`, the size of the numbers cancelled
/// while summing it.
fn kappa0_series(x: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<(Complex64, f64)> {
    let p = AdditivePoint::new(x, tau)?;
    let (z, u) = p.multiplicative();
    if u.norm() >= KAPPA0_NOME_GUARD {
        return Err(Error::TauGuard {
            im_tau: tau.im,
            min: -KAPPA0_NOME_GUARD.ln() / PI,
        });
    }
    let nome = Nome::new(u)?;
    let k = kappa_series(-u, z, nome, pol)?;
    let pref = (3.0 * PI * i() * tau / 4.0).exp();
    Ok((pref * k.value, pref.norm() * k.scale))
}

/// The defect
/// `D(x) = κ₀(x/(cτ+d), γτ) − ζ(γ)^{−2} χ(γ)^{−1} (cτ+d) exp(πi(1/(cτ+d) − 1)x) κ₀(x, τ)`
/// together with its κ₀ scale: the largest of the two terms, the summed
/// term magnitudes behind each of them, and 1.
///
/// At far-out zeros the κ series cancels terms many orders of magnitude
/// larger than its value, so binary64 cannot resolve `D` better than
/// `ε · Σ|terms|`; that is the scale a residual must be measured against.
pub fn modular_defect(
    g: &GammaElement,
    x: Complex64,
    tau: Complex64,
    pol: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    tau_guard(tau, MIN_IM_TAU)?;
    let gt = g.mobius(tau);
    tau_guard(gt, MIN_IM_TAU)?;
    let j = g.automorphy(tau);
    let (first, first_terms) = kappa0_series(x / j, gt, pol)?;
    let factor = (zeta_sq(g).inv() * chi(g).inv()).to_complex()
        * j
        * (PI * i() * (j.inv() - 1.0) * x).exp();
    let (k, k_terms) = kappa0_series(x, tau, pol)?;
    let second = factor * k;
    let scale = first
        .norm()
        .max(second.norm())
        .max(first_terms)
        .max(factor.norm() * k_terms)
        .max(1.0);
    Ok((first - second, scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroDefect {
    pub index: ThetaZeroIndex,
    pub x: Complex64,
    pub defect: Complex64,
    /// The κ₀ scale the defect is measured against.
    pub scale: f64,
    pub rel_residual: f64,
}

/// The defect at each listed zero of `θ(·, τ)`.
pub fn divisibility_defects(
    g: &GammaElement,
    tau: Complex64,
    zeros: &[ThetaZeroIndex],
    pol: &TruncationPolicy,
) -> Result<Vec<ZeroDefect>> {
    zeros
        .iter()
        .map(|z| {
            let x = z.point(tau);
            let (defect, scale) = modular_defect(g, x, tau, pol)?;
            Ok(ZeroDefect {
                index: *z,
                x,
                defect,
                scale,
                rel_residual: defect.norm() / scale,
            })
        })
        .collect()
}

/// Largest normalized defect over the listed zeros; divisibility by θ
/// predicts zero.
pub fn divisibility_residual(
    g: &GammaElement,
    tau: Complex64,
    zeros: &[ThetaZeroIndex],
    pol: &TruncationPolicy,
) -> Result<f64> {
    Ok(divisibility_defects(g, tau, zeros, pol)?
        .iter()
        .map(|d| d.rel_residual)
        .fold(0.0, f64::max))
}

/// `φ_γ(x, τ)`, the coefficient of `θ(x, τ)` in the transformation law of κ,
/// recovered as `exp(−3πiγτ/4) D(x) / θ(x, τ)` away from the zeros of θ.
pub fn phi_gamma(
    g: &GammaElement,
    x: Complex64,
    tau: Complex64,
    pol: &TruncationPolicy,
) -> Result<Complex64> {
    tau_guard(tau, MIN_IM_TAU)?;
    let p = AdditivePoint::new(x, tau)?;
    let (z, u) = p.multiplicative();
    let nome = Nome::new(u)?;
    let ratio = theta_zero_margin(z, nome, pol)?;
    if ratio <= 1e-6 {
        return Err(Error::NearZero { what: "θ(x, τ)", ratio });
    }
    let th = theta(z, nome, pol)?;
    let (defect, _) = modular_defect(g, x, tau, pol)?;
    let gt = g.mobius(tau);
    Ok((-3.0 * PI * i() * gt / 4.0).exp() * defect / th)
}

/// Largest relative residual of
/// `κ₀(x₀ + m + nτ) = exp(πin(τ+1)) κ₀(x₀)` at the zero `x₀ = (τ+1)/2`
/// over `(m, n) ∈ {−r..r}²`.
pub fn quasi_periodicity_residual(tau: Complex64, r: i64, pol: &TruncationPolicy) -> Result<f64> {
    let x0 = ThetaZeroIndex::new(0, 0).point(tau);
    let base = kappa0(x0, tau, pol)?;
    let mut worst = 0.0f64;
    for idx in ThetaZeroIndex::grid(r) {
        let shifted = kappa0(x0 + idx.m as f64 + tau * idx.n as f64, tau, pol)?;
        let want = (PI * i() * idx.n as f64 * (tau + 1.0)).exp() * base;
        let scale = shifted.norm().max(want.norm()).max(1.0);
        worst = worst.max((shifted - want).norm() / scale);
    }
    Ok(worst)
}

/// Relative residual of `θ(0, γτ)² / θ(0, τ)² = ζ(γ)² (cτ + d)`.
pub fn theta_cocycle_residual(g: &GammaElement, tau: Complex64, pol: &TruncationPolicy) -> Result<f64> {
    tau_guard(tau, MIN_IM_TAU)?;
    let gt = g.mobius(tau);
    tau_guard(gt, MIN_IM_TAU)?;
    let zero = Complex64::new(0.0, 0.0);
    let lhs = (theta_additive(zero, gt, pol)? / theta_additive(zero, tau, pol)?).powi(2);
    let rhs = zeta_sq(g).to_complex() * g.automorphy(tau);
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0))
}

/// Residual of the transformation law with `k_γ` and `φ_γ` substituted back:
/// `κ(x', γτ) − k_γ exp(πi(1/(cτ+d) − 1)x) κ(x, τ) − φ_γ θ(x, τ)`, relative
/// to the larger side.
pub fn transformation_law_residual(
    g: &GammaElement,
    x: Complex64,
    tau: Complex64,
    pol: &TruncationPolicy,
) -> Result<f64> {
    let gt = g.mobius(tau);
    let j = g.automorphy(tau);
    let kap = |x: Complex64, t: Complex64| -> Result<Complex64> {
        Ok(kappa0(x, t, pol)? * (-3.0 * PI * i() * t / 4.0).exp())
    };
    let lhs = kap(x / j, gt)?;
    let rhs = k_gamma(g, tau)? * (PI * i() * (j.inv() - 1.0) * x).exp() * kap(x, tau)?
        + phi_gamma(g, x, tau, pol)? * theta_additive(x, tau, pol)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0))
}
