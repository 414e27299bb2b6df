use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use super::{guarded, rel, CheckRecord, SuiteKind, VerifyConfig, Worst, BUNDLE_TOL};
use crate::bundle::{
    basis_sections, bezout_pair, build_b, build_c, c_a, c_a_via_kappa, c_constants, c_via_kappa, check_section,
    det_spread, gauge_residual, make_fa, make_l, mu_expansion_residual, mu_guard_margin, SectionCandidate, Vector,
};
use crate::error::Result;
use crate::numeric::{
    kappa, kappa_pole_margin, log_uniform, seeded_rng, theta, theta_zero_margin, uniform_nome, uniform_phase, Nome,
    TruncationPolicy,
};

const KIND: SuiteKind = SuiteKind::Bundles;
/// `|u|` range for bundle samples.
const U_RANGE: (f64, f64) = (0.05, 0.6);
const MARGIN: f64 = 1e-3;
const DET_POINTS: usize = 20;

fn draw_until<T>(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Result<Option<T>>) -> Result<T> {
    loop {
        if let Some(t) = f(rng)? {
            return Ok(t);
        }
    }
}

/// `(u, a)` with `a`, `1/a` clear of `q^ℤ` and the `c_a` denominators clear of θ zeros.
fn draw_nome_and_a(rng: &mut ChaCha8Rng, pol: &TruncationPolicy) -> Result<(Nome, Complex64)> {
    draw_until(rng, |rng| {
        let nome = uniform_nome(rng, U_RANGE.0, U_RANGE.1);
        let a = log_uniform(rng, 0.5, 2.0);
        let u = nome.u();
        let ok = kappa_pole_margin(a, nome) >= MARGIN
            && kappa_pole_margin(a.inv(), nome) >= MARGIN
            && theta_zero_margin(-a / u, nome, pol)? >= MARGIN
            && theta_zero_margin(-u * a, nome, pol)? >= MARGIN;
        Ok(ok.then_some((nome, a)))
    })
}

fn draw_z_off_theta_zeros(rng: &mut ChaCha8Rng, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    draw_until(rng, |rng| {
        let z = log_uniform(rng, 0.5, 2.0);
        Ok((theta_zero_margin(z, nome, pol)? >= MARGIN).then_some(z))
    })
}

/// `z` away from the zeros of `θ(−uz, q²)` and `θ(−z/u, q²)`.
fn draw_z_for_c(rng: &mut ChaCha8Rng, nome: Nome, pol: &TruncationPolicy) -> Result<Complex64> {
    let u = nome.u();
    let sq = nome.squared();
    draw_until(rng, |rng| {
        let z = log_uniform(rng, 0.5, 2.0);
        let ok = theta_zero_margin(-u * z, sq, pol)? >= MARGIN && theta_zero_margin(-z / u, sq, pol)? >= MARGIN;
        Ok(ok.then_some(z))
    })
}

pub fn bundle_checks(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let pol = cfg.pol;
    let n = cfg.samples.max(1);
    let det_draws = n.div_ceil(10);
    let mut out = Vec::new();

    out.push(guarded("SECTIONS", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("SECTIONS"));
        let mut w = Worst::default();
        for _ in 0..n {
            let (nome, a) = draw_nome_and_a(&mut rng, &pol)?;
            let z = [log_uniform(&mut rng, 0.5, 2.0)];
            let th = SectionCandidate::new(1, "θ", move |z| Ok(Vector::from_element(1, theta(z, nome, &pol)?)));
            let ka = SectionCandidate::new(2, "(κ_a, θ)", move |z| {
                Ok(Vector::from_vec(vec![kappa(a, z, nome, &pol)?, theta(z, nome, &pol)?]))
            });
            w.push(check_section(&make_l(nome), &th, nome, &z)?);
            w.push(check_section(&make_fa(a, nome)?, &ka, nome, &z)?);
            if kappa_pole_margin(-a, nome) >= MARGIN {
                let lf = make_l(nome).tensor(&make_fa(a, nome)?);
                for v in basis_sections(a, nome, &pol)? {
                    w.push(check_section(&lf, &v, nome, &z)?);
                }
            }
        }
        Ok(CheckRecord::residual("SECTIONS", KIND, n, 1e-10, w.max))
    }));

    out.push(guarded("CONJ1", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("CONJ1"));
        let mut w = Worst::default();
        for _ in 0..n {
            let (nome, a) = draw_nome_and_a(&mut rng, &pol)?;
            let z = draw_z_off_theta_zeros(&mut rng, nome, &pol)?;
            w.push(gauge_residual(&build_b(a, nome, &pol)?, nome, &[z])?);
        }
        Ok(CheckRecord::residual("CONJ1", KIND, n, BUNDLE_TOL, w.max))
    }));

    out.push(guarded("CONJ2", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("CONJ2"));
        let mut w = Worst::default();
        for _ in 0..n {
            let nome = uniform_nome(&mut rng, U_RANGE.0, U_RANGE.1);
            let z = draw_z_for_c(&mut rng, nome, &pol)?;
            w.push(gauge_residual(&build_c(nome, &pol)?, nome, &[z])?);
        }
        Ok(CheckRecord::residual("CONJ2", KIND, n, BUNDLE_TOL, w.max))
    }));

    out.push(guarded("DET_B", KIND, || {
        // constant in z, and equal to −c_a
        let mut rng = seeded_rng(cfg.sub_seed("DET_B"));
        let (mut spread, mut value) = (Worst::default(), Worst::default());
        for _ in 0..det_draws {
            let (nome, a) = draw_nome_and_a(&mut rng, &pol)?;
            let zs = (0..DET_POINTS)
                .map(|_| draw_z_off_theta_zeros(&mut rng, nome, &pol))
                .collect::<Result<Vec<_>>>()?;
            let d = det_spread(&build_b(a, nome, &pol)?, &zs)?;
            spread.push(d.spread);
            value.push(rel(d.reference, -c_a(a, nome, &pol)?));
        }
        Ok(CheckRecord::residual("DET_B", KIND, det_draws * DET_POINTS, BUNDLE_TOL, spread.max.max(value.max))
            .with_note(format!("spread {:.3e}, |det + c_a| {:.3e}", spread.max, value.max)))
    }));

    out.push(guarded("C_A_KAPPA", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("C_A_KAPPA"));
        let mut w = Worst::default();
        for _ in 0..n {
            let (nome, a) = draw_nome_and_a(&mut rng, &pol)?;
            w.push(rel(c_a(a, nome, &pol)?, c_a_via_kappa(a, nome, &pol)?));
        }
        Ok(CheckRecord::residual("C_A_KAPPA", KIND, n, BUNDLE_TOL, w.max))
    }));

    out.push(guarded("DET_C", KIND, || {
        // constant in z, and equal to −c
        let mut rng = seeded_rng(cfg.sub_seed("DET_C"));
        let (mut spread, mut value) = (Worst::default(), Worst::default());
        for _ in 0..det_draws {
            let nome = uniform_nome(&mut rng, U_RANGE.0, U_RANGE.1);
            let zs = (0..DET_POINTS)
                .map(|_| draw_z_for_c(&mut rng, nome, &pol))
                .collect::<Result<Vec<_>>>()?;
            let d = det_spread(&build_c(nome, &pol)?, &zs)?;
            spread.push(d.spread);
            value.push(rel(d.reference, -c_constants(nome, &pol)?.c));
        }
        Ok(CheckRecord::residual("DET_C", KIND, det_draws * DET_POINTS, BUNDLE_TOL, spread.max.max(value.max))
            .with_note(format!("spread {:.3e}, |det + c| {:.3e}", spread.max, value.max)))
    }));

    out.push(guarded("C_KAPPA", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("C_KAPPA"));
        let mut w = Worst::default();
        for _ in 0..n {
            let nome = uniform_nome(&mut rng, U_RANGE.0, U_RANGE.1);
            w.push(rel(c_constants(nome, &pol)?.c, c_via_kappa(nome, &pol)?));
        }
        Ok(CheckRecord::residual("C_KAPPA", KIND, n, BUNDLE_TOL, w.max))
    }));

    out.push(guarded("BEZOUT", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("BEZOUT"));
        let mut w = Worst::default();
        for u in [Complex64::new(0.2, 0.0), Complex64::new(0.4, 0.1)] {
            let nome = Nome::new(u)?;
            let bp = bezout_pair(nome, &pol)?;
            let sq = nome.squared();
            let mut ws: Vec<Complex64> = [0.3, 1.0, 3.0]
                .iter()
                .flat_map(|&r| (0..12).map(move |k| Complex64::from_polar(r, 0.5 * k as f64 + 0.1)))
                .collect();
            while ws.len() < 36 + n {
                let z = log_uniform(&mut rng, 0.3, 3.0);
                if theta_zero_margin(z, sq, &pol)? >= MARGIN && theta_zero_margin(nome.q() * z, sq, &pol)? >= MARGIN {
                    ws.push(z);
                }
            }
            for z in ws {
                w.push(bp.residual(z)?);
            }
        }
        Ok(CheckRecord::residual("BEZOUT", KIND, w.count, BUNDLE_TOL, w.max))
    }));

    out.push(guarded("BEZOUT_RADIAL", KIND, || {
        // φ₁ carries 1/θ(w, q²); approaching its zero w = −q the values must settle
        let mut rng = seeded_rng(cfg.sub_seed("BEZOUT_RADIAL"));
        let mut w = Worst::default();
        for _ in 0..n.div_ceil(10) {
            let nome = uniform_nome(&mut rng, U_RANGE.0, U_RANGE.1);
            let bp = bezout_pair(nome, &pol)?;
            let dir = Complex64::from_polar(1.0, uniform_phase(&mut rng));
            let w0 = -nome.q();
            let near = bp.phi(w0 * (1.0 + dir * 1e-5))?.0;
            let nearer = bp.phi(w0 * (1.0 + dir * 1e-6))?.0;
            w.push(rel(near, nearer));
        }
        Ok(CheckRecord::residual("BEZOUT_RADIAL", KIND, w.count, 1e-4, w.max))
    }));

    out.push(guarded("MU", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("MU"));
        let count = n.div_ceil(2);
        let mut w = Worst::default();
        while w.count < count {
            let nome = uniform_nome(&mut rng, U_RANGE.0, U_RANGE.1);
            let a = log_uniform(&mut rng, 0.5, 2.0);
            let b = log_uniform(&mut rng, 0.5, 2.0);
            if mu_guard_margin(a, b, nome, &pol)? < MARGIN {
                continue;
            }
            let z = log_uniform(&mut rng, 0.5, 2.0);
            w.push(mu_expansion_residual(a, b, nome, &[z], &pol)?.rel_residual);
        }
        Ok(CheckRecord::residual("MU", KIND, count, BUNDLE_TOL, w.max))
    }));

    out
}
