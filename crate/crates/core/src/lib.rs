//! Verification toolkit for the Appell function κ(a, z, q), Jacobi theta
//! functions and the rank-2 bundles on elliptic curves they describe.
//!
//! The crate is split by concern:
//!
//! - [`numeric`]: binary64 evaluation of θ, κ, κ̄, q-Pochhammer symbols and a
//!   registry of residual checks for identities with free parameters.
//! - [`qexact`]: truncated power series in `u = q^{1/2}` with exact rational
//!   coefficients, used to check the triangular-number identities coefficient
//!   by coefficient.
//! - [`bundle`]: factors of automorphy, gauge matrices between rank-2 bundles,
//!   the Bezout pair and the μ-expansion in the basis of sections.
//! - [`modular`]: the group Γ₁,₂, its characters and the divisibility of the
//!   κ₀ modular defect by θ.
//! - [`verify`]: the named check suites shared by the CLI and the acceptance
//!   tests.
//!
//! Every numeric routine takes the half-nome `u = q^{1/2}` (as a [`Nome`]) so
//! that no square root is ever taken at evaluation time.

pub mod bundle;
pub mod error;
pub mod modular;
pub mod numeric;
pub mod qexact;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numeric::{EvalPoint, IdentityId, Nome, ResidualReport, TruncationPolicy, Var};
pub use qexact::USeries;

