use num_complex::Complex64;

use super::series::{quadratic_sum, SeriesValue};
use super::{nonzero, theta, Nome, TruncationPolicy};
use crate::error::{Error, Result};

/// Relative pole guard: κ(a, ·) is rejected when `|u^{2n} − a| < POLE_GUARD · max(1, |a|)`
/// for some `|n|` inside the truncation range.
pub const POLE_GUARD: f64 = 1e-8;

const GUARD_SHELLS: i32 = TruncationPolicy::MIN_TERMS as i32;

/// Distance from `u^{2n}` to `a`, computed without forming `u^{2n}` for `n < 0`.
fn pole_distance(a: Complex64, u2: Complex64, n: i32) -> f64 {
    if n >= 0 {
        (u2.powi(n) - a).norm()
    } else {
        let w = u2.powi(-n);
        if w.norm() == 0.0 {
            f64::INFINITY
        } else {
            (Complex64::new(1.0, 0.0) - a * w).norm() / w.norm()
        }
    }
}

/// `min_{|n|≤8} |u^{2n} − a| / max(1, |a|)`.
pub fn kappa_pole_margin(a: Complex64, nome: Nome) -> f64 {
    let u2 = nome.q();
    (-GUARD_SHELLS..=GUARD_SHELLS)
        .map(|n| pole_distance(a, u2, n))
        .fold(f64::INFINITY, f64::min)
        / a.norm().max(1.0)
}

/// The Appell function `κ(a, z, q) = Σ q^{n²/2} zⁿ / (qⁿ − a)`.
///
/// Fails with [`Error::PoleProximity`] when `a` lies within the pole guard of
/// some `u^{2n}` in the summation range.
pub fn kappa(a: Complex64, z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    Ok(kappa_series(a, z, nome, pol)?.value)
}

/// [`kappa`] together with `Σ|terms|`, the scale of its rounding error.
pub fn kappa_series(a: Complex64, z: Complex64, nome: Nome, pol: &TruncationPolicy) -> Result<SeriesValue> {
    let a = nonzero(a, "a")?;
    let z = nonzero(z, "z")?;
    let u2 = nome.q();
    let delta = POLE_GUARD * a.norm().max(1.0);
    let one = Complex64::new(1.0, 0.0);
    quadratic_sum(nome.u(), z, pol, |n| {
        let n = n as i32;
        let distance = pole_distance(a, u2, n);
        if distance < delta {
            return Err(Error::PoleProximity {
                a,
                n: n as i64,
                distance,
            });
        }
        if n >= 0 {
            Ok(one / (u2.powi(n) - a))
        } else {
            // u^{2n} − a = (1 − a w) / w with w = u^{-2n}
            let w = u2.powi(-n);
            Ok(w / (one - a * w))
        }
    })
}

/// `κ̄(a, z) = θ(−q^{−1/2} a) κ(a, z)`, holomorphic in both arguments.
pub fn kappa_bar(
    a: Complex64,
    z: Complex64,
    nome: Nome,
    pol: &TruncationPolicy,
) -> Result<Complex64> {
    let k = kappa(a, z, nome, pol)?;
    Ok(theta(-a / nome.u(), nome, pol)? * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn vanishing_special_values() {
        for u in [c(0.3, 0.0), c(0.2, -0.5)] {
            let nome = Nome::new(u).unwrap();
            let one = c(1.0, 0.0);
            assert!(kappa(u, one, nome, &pol()).unwrap().norm() < 1e-15);
            assert!(kappa(-u, -one, nome, &pol()).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn tiny_nome_reduces_to_constant_term() {
        let nome = Nome::real(1e-9).unwrap();
        let a = c(0.4, 0.9);
        let got = kappa(a, c(1.1, -0.3), nome, &pol()).unwrap();
        let want = 1.0 / (1.0 - a);
        assert!((got - want).norm() < 1e-8 * want.norm());
    }

    #[test]
    fn defining_equation() {
        let nome = Nome::new(c(0.35, 0.4)).unwrap();
        let (a, z) = (c(0.7, -1.1), c(-0.8, 0.5));
        let lhs = kappa(a, nome.q() * z, nome, &pol()).unwrap();
        let rhs = a * kappa(a, z, nome, &pol()).unwrap() + theta(z, nome, &pol()).unwrap();
        assert!((lhs - rhs).norm() < 1e-13 * lhs.norm().max(1.0));
    }

    #[test]
    fn matches_direct_bilateral_sum() {
        let nome = Nome::real(0.3).unwrap();
        let (a, z) = (c(0.5, 0.5), c(1.2, 0.0));
        let u = nome.u();
        let direct: Complex64 = (-25i32..=25)
            .map(|n| u.powi(n * n) * z.powi(n) / (u.powi(2 * n) - a))
            .sum();
        let got = kappa(a, z, nome, &pol()).unwrap();
        assert!((got - direct).norm() < 1e-14 * direct.norm());
    }

    #[test]
    fn pole_guard_fires_near_integer_powers_of_q() {
        for u in [0.05, 0.3, 0.75] {
            let nome = Nome::real(u).unwrap();
            for n in -3..=3 {
                let a = nome.q().powi(n) * (1.0 + 1e-14);
                let err = kappa(a, c(1.0, 0.0), nome, &pol()).unwrap_err();
                assert!(matches!(err, Error::PoleProximity { .. }), "u={u} n={n}");
            }
        }
    }

    #[test]
    fn kappa_bar_stays_bounded_across_pole_at_one() {
        let nome = Nome::new(c(0.3, 0.2)).unwrap();
        let z = c(0.9, 0.3);
        let a = c(1.0 - 1e-6, 0.0);
        let k = kappa(a, z, nome, &pol()).unwrap();
        let kb = kappa_bar(a, z, nome, &pol()).unwrap();
        assert!(k.norm() > 1e5);
        assert!(kb.norm() < 10.0);
    }

    #[test]
    fn kappa_bar_limit_at_one_is_jacobi_product() {
        let nome = Nome::new(c(0.4, -0.25)).unwrap();
        let p = pol();
        let u = nome.u();
        let one = c(1.0, 0.0);
        let target = 0.5
            * theta(one, nome, &p).unwrap()
            * theta(-one, nome, &p).unwrap()
            * theta(u, nome, &p).unwrap();
        for z in [c(0.8, 0.1), c(-1.4, 0.6)] {
            let h = 1e-5;
            let avg = 0.5
                * (kappa_bar(c(1.0 + h, 0.0), z, nome, &p).unwrap()
                    + kappa_bar(c(1.0 - h, 0.0), z, nome, &p).unwrap());
            assert!((avg - target).norm() < 1e-8 * target.norm());
        }
    }

    #[test]
    fn truncation_is_stable_under_refinement() {
        let nome = Nome::new(c(-0.5, 0.45)).unwrap();
        let (a, z) = (c(1.3, 0.4), c(0.6, -1.2));
        let base = kappa(a, z, nome, &pol()).unwrap();
        let fine = kappa(a, z, nome, &pol().refined()).unwrap();
        assert!((base - fine).norm() < 1e-11 * base.norm().max(1.0));
    }
}
