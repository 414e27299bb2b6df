use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("nome out of range: |u| = {modulus} must lie strictly between 0 and 1")]
    NomeOutOfRange { modulus: f64 },

    #[error("argument `{name}` must be nonzero and finite")]
    ZeroArgument { name: &'static str },

    #[error("series did not reach the term-size criterion within {n_max} terms")]
    NonConvergence { n_max: usize },

    #[error("a = {a} is within {distance:e} of the pole u^(2n) at n = {n}")]
    PoleProximity { a: Complex64, n: i64, distance: f64 },

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("{identity}: {reason}")]
    Domain { identity: String, reason: String },

    #[error("matrix [[{a}, {b}], [{c}, {d}]] is not in Γ₁,₂: {reason}")]
    NotInGamma12 {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        reason: &'static str,
    },

    #[error("Im τ = {im_tau} is below the guard {min}")]
    TauGuard { im_tau: f64, min: f64 },

    #[error("point too close to a zero of {what}: relative magnitude {ratio:e}")]
    NearZero { what: &'static str, ratio: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn domain(identity: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            identity: identity.into(),
            reason: reason.into(),
        }
    }
}
