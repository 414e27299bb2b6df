use num_complex::Complex64;

use super::gauge::{build_c, c_constants, GaugeMatrix};
use crate::error::Result;
use crate::numeric::{theta2, Nome, TruncationPolicy};

/// Holomorphic `φ₁, φ₂` with `φ₁(w)θ(w, q²) − φ₂(w)θ(qw, q²) = 1`, read off
/// the first row of `C` at `z = −uw`:
/// `φ₁(w) = C₁₂(−uw)/c`, `φ₂(w) = −C₁₁(−uw)/c`.
#[derive(Clone, Debug)]
pub struct BezoutPair {
    nome: Nome,
    pol: TruncationPolicy,
    c: Complex64,
    gauge: GaugeMatrix,
}

pub fn bezout_pair(nome: Nome, pol: &TruncationPolicy) -> Result<BezoutPair> {
    Ok(BezoutPair {
        nome,
        pol: *pol,
        c: c_constants(nome, pol)?.c,
        gauge: build_c(nome, pol)?,
    })
}

impl BezoutPair {
    pub fn phi(&self, w: Complex64) -> Result<(Complex64, Complex64)> {
        let m = self.gauge.eval(-self.nome.u() * w)?;
        Ok((m[(0, 1)] / self.c, -m[(0, 0)] / self.c))
    }

    /// `|φ₁(w)θ(w, q²) − φ₂(w)θ(qw, q²) − 1|`.
    pub fn residual(&self, w: Complex64) -> Result<f64> {
        let (p1, p2) = self.phi(w)?;
        let t = theta2(w, self.nome, &self.pol)?;
        let tq = theta2(self.nome.q() * w, self.nome, &self.pol)?;
        Ok((p1 * t - p2 * tq - 1.0).norm())
    }
}
