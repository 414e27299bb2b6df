use num_complex::Complex64;

use super::TruncationPolicy;
use crate::error::{Error, Result};

/// `(x; q)_∞ = Π_{k≥0} (1 − x q^k)`, stopping once `|x q^k| < eps_term`.
pub fn qpochhammer(x: Complex64, q: Complex64, pol: &TruncationPolicy) -> Result<Complex64> {
    if q.norm().is_nan() || q.norm() >= 1.0 {
        return Err(Error::NomeOutOfRange { modulus: q.norm() });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut prod = one;
    let mut factor = x;
    for _ in 0..pol.n_max {
        if factor.norm() < pol.eps_term {
            return Ok(prod);
        }
        prod *= one - factor;
        factor *= q;
    }
    Err(Error::NonConvergence { n_max: pol.n_max })
}
