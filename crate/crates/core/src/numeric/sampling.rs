use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{kappa_pole_margin, EvalPoint, IdentityId, Nome, TruncationPolicy, Var};

/// Where [`sample_points`] draws from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleDomain {
    /// `None` draws `z, a, b` and guards κ(a, ·) and κ(ab, ·).
    pub identity: Option<IdentityId>,
    /// Range of `|u|`, sampled uniformly.
    pub u_modulus: (f64, f64),
    /// Range of `|z|, |a|, |b|`, sampled log-uniformly.
    pub binding_modulus: (f64, f64),
    /// Points whose guard margin falls below this are redrawn.
    pub min_margin: f64,
}

impl Default for SampleDomain {
    fn default() -> Self {
        SampleDomain {
            identity: None,
            u_modulus: (0.05, 0.75),
            binding_modulus: (0.5, 2.0),
            min_margin: 1e-3,
        }
    }
}

impl SampleDomain {
    pub fn for_identity(id: IdentityId) -> Self {
        SampleDomain {
            identity: Some(id),
            ..Default::default()
        }
    }
}

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn uniform_phase<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-PI..PI)
}

pub(crate) fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Complex64 {
    let r = rng.random_range(lo.ln()..=hi.ln()).exp();
    Complex64::from_polar(r, uniform_phase(rng))
}

pub(crate) fn uniform_nome<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Nome {
    let r = rng.random_range(lo..=hi);
    Nome::new(Complex64::from_polar(r, uniform_phase(rng))).expect("modulus range inside (0, 1)")
}

/// Deterministic pseudo-random points filtered by the guards of the domain's
/// identity. Equal seeds give equal lists.
pub fn sample_points(domain: &SampleDomain, count: usize, seed: u64) -> Vec<(EvalPoint, Nome)> {
    let mut rng = seeded_rng(seed);
    let pol = TruncationPolicy::default();
    let vars: &[Var] = match domain.identity {
        Some(id) => id.vars(),
        None => &[Var::Z, Var::A, Var::B],
    };
    let (lo, hi) = domain.binding_modulus;
    let mut out = Vec::with_capacity(count);
    let max_attempts = count.saturating_mul(10_000).max(10_000);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let nome = uniform_nome(&mut rng, domain.u_modulus.0, domain.u_modulus.1);
        let mut point = EvalPoint::new();
        for var in vars {
            let value = match var {
                Var::S => log_uniform(&mut rng, lo.sqrt(), hi.sqrt()),
                Var::V => {
                    let v = nome.u().sqrt();
                    if rng.random_bool(0.5) { v } else { -v }
                }
                _ => log_uniform(&mut rng, lo, hi),
            };
            point.bind(*var, value).expect("sampled values are nonzero");
        }
        let margin = match domain.identity {
            Some(id) => match id.guard_margin(&point, nome, &pol) {
                Ok(m) => m,
                Err(_) => continue,
            },
            None => {
                let a = point.get(Var::A).unwrap();
                let b = point.get(Var::B).unwrap();
                kappa_pole_margin(a, nome).min(kappa_pole_margin(a * b, nome))
            }
        };
        if margin >= domain.min_margin {
            out.push((point, nome));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        let d = SampleDomain::default();
        assert_eq!(sample_points(&d, 5, 3), sample_points(&d, 5, 3));
        assert_ne!(sample_points(&d, 5, 3), sample_points(&d, 5, 4));
        assert_eq!(sample_points(&d, 1, 0).len(), 1);
    }

    #[test]
    fn hundred_guarded_points() {
        let pol = TruncationPolicy::default();
        for id in [IdentityId::Hadd2, IdentityId::Id55, IdentityId::Sqrt] {
            let pts = sample_points(&SampleDomain::for_identity(id), 100, 7);
            assert_eq!(pts.len(), 100);
            for (p, nome) in &pts {
                assert!(id.guard_margin(p, *nome, &pol).unwrap() >= 1e-3);
                assert!((0.05..=0.75).contains(&nome.u().norm()));
                for (var, value) in p.iter() {
                    let m = value.norm();
                    match var {
                        Var::V => assert!((value * value - nome.u()).norm() < 1e-15),
                        Var::S => assert!((0.5f64.sqrt() - 1e-12..=2f64.sqrt() + 1e-12).contains(&m)),
                        _ => assert!((0.5 - 1e-12..=2.0 + 1e-12).contains(&m)),
                    }
                }
            }
        }
    }
}
