//! Binary64 evaluation of the theta and Appell functions, and residual checks
//! for every identity with free complex parameters.

mod identities;
mod kappa;
mod nome;
mod pochhammer;
mod sampling;
mod series;
mod theta;

pub use identities::{identity_residual, EvalPoint, IdentityId, ResidualReport, Var};
pub use kappa::{kappa, kappa_bar, kappa_series, kappa_pole_margin, POLE_GUARD};
pub use nome::{Nome, TruncationPolicy};
pub use pochhammer::qpochhammer;
pub use sampling::{sample_points, SampleDomain};
pub(crate) use sampling::{log_uniform, seeded_rng, uniform_nome, uniform_phase};
pub use series::SeriesValue;
pub use theta::{
    dtheta_dz, theta, theta2, theta_series, theta_zero_margin, vartheta0, vartheta1,
};

use crate::error::{Error, Result};
use num_complex::Complex64;

pub(crate) fn nonzero(z: Complex64, name: &'static str) -> Result<Complex64> {
    if z.norm() > 0.0 && z.is_finite() {
        Ok(z)
    } else {
        Err(Error::ZeroArgument { name })
    }
}
