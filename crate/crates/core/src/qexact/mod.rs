//! Truncated power series in `u = q^{1/2}` with exact rational coefficients.
//!
//! Everything here is exact: identities are compared coefficient by
//! coefficient up to the truncation order, and a failure reports the first
//! exponent at which the two sides differ.

mod identities;
mod series;
mod special;

pub use identities::{
    andrews_series, check_for1_exact, check_for2_exact, double_sum_series, double_sum_series_extended,
    triangular_counts_bruteforce, ExactOutcome, SpecialValues, TriangularCounts,
};
pub use series::USeries;
pub use special::{geom_inverse, kappa_special_series, theta_null, triangular_gf, KappaSpecial, ThetaNull};
