use num_complex::Complex64;

use super::{guarded, rel, CheckRecord, SuiteKind, VerifyConfig, Worst, NUMERIC_TOL};
use crate::error::{Error, Result};
use crate::numeric::{
    dtheta_dz, identity_residual, kappa, log_uniform, sample_points, seeded_rng, theta, theta_zero_margin,
    uniform_phase, IdentityId, Nome, SampleDomain, TruncationPolicy, Var,
};

const KIND: SuiteKind = SuiteKind::Numeric;

/// Worst relative residual of one registry identity over seeded samples.
pub fn identity_check(id: IdentityId, cfg: &VerifyConfig) -> CheckRecord {
    guarded(id.as_str(), KIND, || {
        let points = sample_points(&SampleDomain::for_identity(id), cfg.samples, cfg.sub_seed(id.as_str()));
        if points.len() < cfg.samples {
            return Err(Error::domain(id.as_str(), format!("only {} guarded samples found", points.len())));
        }
        let mut w = Worst::default();
        for (p, nome) in &points {
            w.push(identity_residual(id, p, *nome, &cfg.pol)?.rel_residual);
        }
        Ok(CheckRecord::residual(id.as_str(), KIND, w.count, NUMERIC_TOL, w.max))
    })
}

fn default_points(cfg: &VerifyConfig, check: &str) -> Vec<(crate::numeric::EvalPoint, Nome)> {
    sample_points(&SampleDomain::default(), cfg.samples, cfg.sub_seed(check))
}

/// Registry identities plus the kernel's own invariants.
pub fn numeric_checks(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut out: Vec<CheckRecord> = IdentityId::ALL.iter().map(|id| identity_check(*id, cfg)).collect();
    let pol = cfg.pol;

    out.push(guarded("SQRT_BRANCH", KIND, || {
        let id = IdentityId::Sqrt;
        let points = sample_points(&SampleDomain::for_identity(id), cfg.samples, cfg.sub_seed("SQRT_BRANCH"));
        let mut w = Worst::default();
        for (p, nome) in &points {
            let s = p.get(Var::S).expect("sampled");
            let flipped = p.clone().with(Var::S, -s)?;
            w.push(identity_residual(id, p, *nome, &pol)?.rel_residual);
            w.push(identity_residual(id, &flipped, *nome, &pol)?.rel_residual);
        }
        Ok(CheckRecord::residual("SQRT_BRANCH", KIND, points.len(), NUMERIC_TOL, w.max))
    }));

    out.push(guarded("THETA_ZERO", KIND, || {
        let mut w = Worst::default();
        for (_, nome) in default_points(cfg, "THETA_ZERO") {
            let u = nome.u();
            for k in [-1i32, 0, 1] {
                w.push(theta_zero_margin(-u.powi(2 * k + 1), nome, &pol)?);
            }
        }
        Ok(CheckRecord::residual("THETA_ZERO", KIND, w.count, NUMERIC_TOL, w.max))
    }));

    out.push(guarded("THETA_QUASI", KIND, || {
        let mut w = Worst::default();
        for (p, nome) in default_points(cfg, "THETA_QUASI") {
            let z = p.get(Var::Z).expect("sampled");
            let lhs = theta(nome.q() * z, nome, &pol)?;
            let rhs = theta(z, nome, &pol)? / (nome.u() * z);
            w.push(rel(lhs, rhs));
        }
        Ok(CheckRecord::residual("THETA_QUASI", KIND, w.count, 1e-10, w.max))
    }));

    out.push(guarded("KAPPA_TRUNC", KIND, || {
        let fine = pol.refined();
        let mut w = Worst::default();
        for (p, nome) in default_points(cfg, "KAPPA_TRUNC") {
            let (a, z) = (p.get(Var::A).expect("sampled"), p.get(Var::Z).expect("sampled"));
            w.push(rel(kappa(a, z, nome, &pol)?, kappa(a, z, nome, &fine)?));
        }
        Ok(CheckRecord::residual("KAPPA_TRUNC", KIND, w.count, 1e-11, w.max))
    }));

    out.push(guarded("DTHETA_FD", KIND, || {
        let h = 1e-6;
        let mut w = Worst::default();
        for (p, nome) in default_points(cfg, "DTHETA_FD").into_iter().take(20) {
            let z = p.get(Var::Z).expect("sampled");
            let fd = (theta(z * (1.0 + h), nome, &pol)? - theta(z * (1.0 - h), nome, &pol)?) / (2.0 * z * h);
            w.push(rel(dtheta_dz(z, nome, &pol)?, fd));
        }
        Ok(CheckRecord::residual("DTHETA_FD", KIND, w.count, 1e-6, w.max))
    }));
    out
}

/// The `u → 0` reductions and the pole guard.
pub fn degenerate_checks(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let pol = cfg.pol;
    let n = cfg.samples.max(1);
    let mut out = Vec::new();

    out.push(guarded("LIMIT_THETA", KIND, || {
        // θ(z) = 1 + u(z + 1/z) + O(u⁴)
        let mut rng = seeded_rng(cfg.sub_seed("LIMIT_THETA"));
        let mut w = Worst::default();
        for _ in 0..n {
            let nome = Nome::new(Complex64::from_polar(1e-9, uniform_phase(&mut rng)))?;
            let z = log_uniform(&mut rng, 0.5, 2.0);
            let first = 1.0 + nome.u() * (z + z.inv());
            w.push(rel(theta(z, nome, &pol)?, first));
        }
        Ok(CheckRecord::residual("LIMIT_THETA", KIND, w.count, 1e-15, w.max))
    }));

    out.push(guarded("LIMIT_KAPPA", KIND, || {
        // κ(a, z) = 1/(1 − a) − uz/a + O(u³)
        let mut rng = seeded_rng(cfg.sub_seed("LIMIT_KAPPA"));
        let mut w = Worst::default();
        while w.count < n {
            let nome = Nome::new(Complex64::from_polar(1e-9, uniform_phase(&mut rng)))?;
            let a = log_uniform(&mut rng, 0.5, 2.0);
            if (1.0 - a).norm() < 1e-3 {
                continue;
            }
            let z = log_uniform(&mut rng, 0.5, 2.0);
            let first = (1.0 - a).inv() - nome.u() * z / a;
            let got = kappa(a, z, nome, &pol)?;
            w.push((got - first).norm() / first.norm().max(1.0));
        }
        Ok(CheckRecord::residual("LIMIT_KAPPA", KIND, w.count, 1e-12, w.max))
    }));

    out.push(guarded("POLE_GUARD", KIND, || pole_guard_record(cfg)));
    out
}

fn pole_guard_record(cfg: &VerifyConfig) -> Result<CheckRecord> {
    let mut rng = seeded_rng(cfg.sub_seed("POLE_GUARD"));
    let mut tried = 0;
    for r in [0.05, 0.3, 0.75] {
        let nome = Nome::new(Complex64::from_polar(r, uniform_phase(&mut rng)))?;
        let z = log_uniform(&mut rng, 0.5, 2.0);
        for n in -3i32..=3 {
            let a = nome.u().powi(2 * n) * (1.0 + 1e-14);
            tried += 1;
            match kappa(a, z, nome, &TruncationPolicy::default()) {
                Err(Error::PoleProximity { .. }) => {}
                other => {
                    return Ok(CheckRecord::flag(
                        "POLE_GUARD",
                        KIND,
                        tried,
                        false,
                        Some(format!("a = u^{} (1 + 1e-14) at |u| = {r}: {other:?}", 2 * n)),
                    ))
                }
            }
        }
    }
    Ok(CheckRecord::flag("POLE_GUARD", KIND, tried, true, None))
}
