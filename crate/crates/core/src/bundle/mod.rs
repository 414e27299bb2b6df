//! Rank-1 and rank-2 bundles on `E = ℂ*/q^ℤ` given by factors of automorphy,
//! the explicit gauge matrices relating them, and sections built from θ and κ.
//!
//! A factor of automorphy `A(z)` defines `V_r(A) = ℂ* × ℂ^r / (z, v) ∼ (qz, A(z)v)`;
//! a section is a vector function with `v(qz) = A(z)v(z)`, and a gauge matrix
//! `B` identifies `V(A)` with `V(A')` when `B(qz)A(z) = A'(z)B(z)`.
//! Everything is checked pointwise at sampled `z`.

mod automorphy;
mod bezout;
mod gauge;
mod mu;

pub use automorphy::{
    check_section, make_fa, make_fpa, make_l, make_pa, make_push, FactorOfAutomorphy, Matrix,
    SectionCandidate, Vector,
};
pub use bezout::{bezout_pair, BezoutPair};
pub use gauge::{
    build_b, build_c, c_a, c_a_via_kappa, c_constants, c_via_kappa, det_spread, gauge_residual,
    CConstants, DetSpread, GaugeMatrix,
};
pub use mu::{basis_sections, lambda_b, mu_expansion_residual, mu_guard_margin, nu_ab};
