//! The congruence subgroup Γ₁,₂, its characters, and the modular behaviour
//! of `κ₀(x, τ) = exp(3πiτ/4) κ((τ+1)/2, x, τ)` in additive variables.

mod divisibility;
mod gamma;

pub use divisibility::{
    divisibility_defects, divisibility_residual, kappa0, modular_defect, phi_gamma,
    quasi_periodicity_residual, theta_additive, theta_cocycle_residual, transformation_law_residual, AdditivePoint,
    ThetaZeroIndex, ZeroDefect, KAPPA0_NOME_GUARD, MIN_IM_TAU,
};
pub use gamma::{act, chi, k_gamma, zeta_sq, FourthRoot, GammaElement};
