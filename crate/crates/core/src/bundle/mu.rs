use num_complex::Complex64;

use super::automorphy::{SectionCandidate, Vector};
use crate::error::{Error, Result};
use crate::numeric::{kappa, kappa_pole_margin, nonzero, theta, theta_zero_margin, EvalPoint, Nome, ResidualReport, TruncationPolicy, Var};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The basis `v₀(a), v₁(a), v₋₁(a)` of sections of `L ⊗ F_a`:
///
/// ```text
/// v₀  = [θ(z/a), 0]
/// v₁  = [θ(z)κ(a, z), θ(z)²]
/// v₋₁ = [θ(−z)κ(−a, −z), −θ(−z)²]
/// ```
pub fn basis_sections(a: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<[SectionCandidate; 3]> {
    nonzero(a, "a")?;
    let pol = *pol;
    let v0 = SectionCandidate::new(2, format!("v0[{a}]"), move |z| {
        Ok(Vector::from_vec(vec![theta(z / a, nome, &pol)?, c(0.0)]))
    });
    let v1 = SectionCandidate::new(2, format!("v1[{a}]"), move |z| {
        let t = theta(z, nome, &pol)?;
        Ok(Vector::from_vec(vec![t * kappa(a, z, nome, &pol)?, t * t]))
    });
    let vm1 = SectionCandidate::new(2, format!("v-1[{a}]"), move |z| {
        let t = theta(-z, nome, &pol)?;
        Ok(Vector::from_vec(vec![t * kappa(-a, -z, nome, &pol)?, -t * t]))
    });
    Ok([v0, v1, vm1])
}

/// `λ_b = θ(u/b)θ(ub) / θ(u)²`.
pub fn lambda_b(b: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    nonzero(b, "b")?;
    let u = nome.u();
    Ok(theta(u / b, nome, pol)? * theta(u * b, nome, pol)? / theta(u, nome, pol)?.powi(2))
}

/// `ν_{a,b} = θ(1)θ(ub)θ(−ub)θ(−u/b)θ(b)θ(ab) / (2θ(u)θ(−u/a)θ(ab/u)θ(−ab²))`.
pub fn nu_ab(a: Complex64, b: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    let u = nome.u();
    let t = |w: Complex64| theta(w, nome, pol);
    let num = t(c(1.0))? * t(u * b)? * t(-u * b)? * t(-u / b)? * t(b)? * t(a * b)?;
    let den = 2.0 * t(u)? * t(-u / a)? * t(a * b / u)? * t(-a * b * b)?;
    Ok(num / den)
}

/// Smallest guard margin of the μ-expansion at `(a, b)`: κ pole margins of
/// `a`, `ab`, `−ab` and θ-zero margins of the ν denominators.
pub fn mu_guard_margin(a: Complex64, b: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<f64> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    let u = nome.u();
    let ab = a * b;
    let mut m = [a, ab, -ab]
        .iter()
        .map(|&x| kappa_pole_margin(x, nome))
        .fold(f64::INFINITY, f64::min);
    for w in [-u / a, ab / u, -ab / u, -ab * b] {
        m = m.min(theta_zero_margin(w, nome, pol)?);
    }
    Ok(m)
}

/// Compares, component by component,
///
/// ```text
/// b^{−1} [θ(z/b)κ(a, bz), b θ(z/b)θ(bz)]
///   = λ_b v₁(ab) − λ_{−b} v₋₁(ab) + (ν_{a,b} − ν_{a,−b}) v₀(ab)
/// ```
///
/// at every point and returns the worst component report (`MU[1]` or `MU[2]`).
pub fn mu_expansion_residual(
    a: Complex64,
    b: Complex64,
    nome: Nome,
    points: &[Complex64],
    pol: &TruncationPolicy,
) -> Result<ResidualReport> {
    let margin = mu_guard_margin(a, b, nome, pol)?;
    if margin <= 1e-12 {
        return Err(Error::domain("MU", format!("guard margin {margin:e} at a = {a}, b = {b}")));
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument("mu_expansion_residual needs at least one point".into()));
    }
    let ab = a * b;
    let [v0, v1, vm1] = basis_sections(ab, nome, pol)?;
    let lp = lambda_b(b, nome, pol)?;
    let lm = lambda_b(-b, nome, pol)?;
    let nu = nu_ab(a, b, nome, pol)? - nu_ab(a, -b, nome, pol)?;
    let mut worst: Option<ResidualReport> = None;
    for &z in points {
        let tb = theta(z / b, nome, pol)?;
        let lhs = [tb * kappa(a, b * z, nome, pol)? / b, tb * theta(b * z, nome, pol)?];
        let rhs = v1.eval(z)? * lp - vm1.eval(z)? * lm + v0.eval(z)? * nu;
        let point = EvalPoint::new().with(Var::Z, z)?.with(Var::A, a)?.with(Var::B, b)?;
        for (i, l) in lhs.iter().enumerate() {
            let r = ResidualReport::new(format!("MU[{}]", i + 1), point.clone(), nome.u(), *l, rhs[i]);
            worst = Some(match worst {
                None => r,
                Some(w) => w.worst(r),
            });
        }
    }
    Ok(worst.expect("points is nonempty"))
}
