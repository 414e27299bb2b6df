use num_complex::Complex64;

use super::series::{quadratic_sum, SeriesValue};
use super::{nonzero, Nome, TruncationPolicy};
use crate::error::Result;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `θ(z, q) = Σ q^{n²/2} zⁿ = Σ u^{n²} zⁿ`, with its absolute scale.
pub fn theta_series(z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<SeriesValue> {
    let z = nonzero(z, "z")?;
    quadratic_sum(nome.u(), z, pol, |_| Ok(ONE))
}

/// `θ(z, q) = Σ u^{n²} zⁿ`.
pub fn theta(z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    theta_series(z, nome, pol).map(|s| s.value)
}

/// `θ(z, q²) = Σ u^{2n²} zⁿ`, evaluated at the base half-nome `u`.
pub fn theta2(z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    theta(z, nome.squared(), pol)
}

/// `ϑ₀(z) = θ(z², q²) = Σ q^{n²} z^{2n}` where `q = v⁴`.
///
/// Takes the quarter-nome `v` (`v² = u`) so that both ϑ₀ and ϑ₁ have integral
/// exponents in their nome argument.
pub fn vartheta0(z: Complex64, v: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    let z = nonzero(z, "z")?;
    let q = v.q() * v.q();
    quadratic_sum(q, z * z, pol, |_| Ok(ONE)).map(|s| s.value)
}

/// `ϑ₁(z) = Σ q^{(n+1/2)²} z^{2n+1} = Σ v^{(2n+1)²} z^{2n+1}` where `q = v⁴`.
pub fn vartheta1(z: Complex64, v: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    let z = nonzero(z, "z")?;
    // v^{(2n+1)²} z^{2n+1} = v z · (v⁴)^{n²} (v⁴ z²)^n
    let q = v.q() * v.q();
    let inner = quadratic_sum(q, q * z * z, pol, |_| Ok(ONE))?;
    Ok(v.u() * z * inner.value)
}

/// Term-wise derivative `dθ/dz = Σ n u^{n²} z^{n-1}`.
pub fn dtheta_dz(z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    let z = nonzero(z, "z")?;
    let s = quadratic_sum(nome.u(), z, pol, |n| Ok(Complex64::new(n as f64, 0.0)))?;
    Ok(s.value / z)
}

/// `|θ(w)| / Σ|terms|`; small values mean `w` is close to a zero `-u^{2k+1}`.
pub fn theta_zero_margin(w: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<f64> {
    let s = theta_series(w, nome, pol)?;
    Ok(if s.scale > 0.0 { s.value.norm() / s.scale } else { 0.0 })
}
