use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The half-nome `u = q^{1/2}` with `0 < |u| < 1`.
///
/// All half-integral powers of `q` are integral powers of `u`; `q` itself is
/// always derived as `u²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Nome(Complex64);

impl Nome {
    pub fn new(u: Complex64) -> Result<Self> {
        let modulus = u.norm();
        if modulus > 0.0 && modulus < 1.0 && u.is_finite() {
            Ok(Nome(u))
        } else {
            Err(Error::NomeOutOfRange { modulus })
        }
    }

    pub fn real(u: f64) -> Result<Self> {
        Nome::new(Complex64::new(u, 0.0))
    }

    /// `u = exp(πiτ)`; requires `Im τ > 0`.
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        Nome::new((Complex64::i() * PI * tau).exp())
    }

    #[inline]
    pub fn u(&self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn q(&self) -> Complex64 {
        self.0 * self.0
    }

    /// The nome of `θ(·, q²)`, i.e. the half-nome `q`.
    pub fn squared(&self) -> Nome {
        Nome(self.q())
    }

    /// The τ with `exp(πiτ) = u` on the principal branch, so `-1 < Re τ ≤ 1`.
    pub fn tau(&self) -> Complex64 {
        self.0.ln() / (Complex64::i() * PI)
    }
}

/// Stopping rule for the truncated series and products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Stop once a term falls below `eps_term` times the running scale.
    pub eps_term: f64,
    /// Hard cap on the number of terms (per side for bilateral sums).
    pub n_max: usize,
}

impl TruncationPolicy {
    pub const MIN_TERMS: usize = 8;

    pub fn new(eps_term: f64, n_max: usize) -> Result<Self> {
        if !(eps_term > 0.0 && eps_term < 1.0) {
            return Err(Error::InvalidPolicy(format!(
                "eps_term = {eps_term} must lie in (0, 1)"
            )));
        }
        if n_max < Self::MIN_TERMS {
            return Err(Error::InvalidPolicy(format!(
                "n_max = {n_max} must be at least {}",
                Self::MIN_TERMS
            )));
        }
        Ok(TruncationPolicy { eps_term, n_max })
    }

    /// Twice the cap and half the tolerance.
    pub fn refined(&self) -> Self {
        TruncationPolicy {
            eps_term: self.eps_term / 2.0,
            n_max: self.n_max * 2,
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            eps_term: 1e-16,
            n_max: 200,
        }
    }
}
