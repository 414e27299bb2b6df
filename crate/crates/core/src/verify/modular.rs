use num_complex::Complex64;
use rand::Rng;

use super::{guarded, rel, CheckRecord, SuiteKind, VerifyConfig, Worst, MODULAR_TOL};
use crate::error::{Error, Result};
use crate::modular::{
    act, chi, divisibility_residual, k_gamma, modular_defect, phi_gamma, theta_cocycle_residual, transformation_law_residual,
    AdditivePoint, GammaElement, ThetaZeroIndex, MIN_IM_TAU,
};
use crate::numeric::{log_uniform, seeded_rng};

const KIND: SuiteKind = SuiteKind::Modular;

/// Base points τ of the modular checks: `1.2i`, `2i`, `0.5 + 1.5i`.
pub const TAU_PROBES: [Complex64; 3] = [
    Complex64::new(0.0, 1.2),
    Complex64::new(0.0, 2.0),
    Complex64::new(0.5, 1.5),
];

/// Lower bound the normalized defect must exceed off the θ-zeros.
pub const DIV_CONTROL_FLOOR: f64 = 1e-3;

const GENERATORS: [GammaElement; 2] = [GammaElement::T2, GammaElement::L2];

fn alphabet() -> [GammaElement; 5] {
    [
        GammaElement::T2,
        GammaElement::T2.inverse(),
        GammaElement::L2,
        GammaElement::L2.inverse(),
        GammaElement::S,
    ]
}

fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> GammaElement {
    let letters = alphabet();
    let len = rng.random_range(1..=max_len);
    (0..len).fold(GammaElement::IDENTITY, |g, _| g * letters[rng.random_range(0..letters.len())])
}

/// `count` distinct words of length ≤ 3 over `T², T⁻², L², L⁻², S`, skipping
/// the identity, the generators, and any word sending one of the probe τ
/// below `Im τ = MIN_IM_TAU`.
pub fn random_words(count: usize, seed: u64) -> Result<Vec<GammaElement>> {
    let mut rng = seeded_rng(seed);
    let mut out: Vec<GammaElement> = Vec::with_capacity(count);
    for _ in 0..10_000 {
        if out.len() == count {
            return Ok(out);
        }
        let g = random_word(&mut rng, 3);
        let fresh = g != GammaElement::IDENTITY && !GENERATORS.contains(&g) && !out.contains(&g);
        if fresh && TAU_PROBES.iter().all(|t| g.mobius(*t).im >= MIN_IM_TAU) {
            out.push(g);
        }
    }
    Err(Error::InvalidArgument(format!("found only {} admissible words", out.len())))
}

pub fn modular_checks(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let pol = cfg.pol;
    let grid = ThetaZeroIndex::grid(1);
    let mut out = Vec::new();

    let words = match random_words(10, cfg.sub_seed("WORDS")) {
        Ok(w) => w,
        Err(e) => return vec![CheckRecord::failed("DIV", KIND, &e)],
    };
    let elements: Vec<GammaElement> = GENERATORS.iter().copied().chain(words.iter().copied()).collect();

    for g in &elements {
        let [a, b, c, d] = g.entries();
        let id = format!("DIV[{a},{b},{c},{d}]");
        out.push(guarded(&id, KIND, || {
            let mut w = Worst::default();
            for tau in TAU_PROBES {
                w.push(divisibility_residual(g, tau, &grid, &pol)?);
            }
            Ok(CheckRecord::residual(id.clone(), KIND, w.count * grid.len(), MODULAR_TOL, w.max))
        }));
    }

    // The same normalization, one step away from every zero, must still see
    // the defect. Elements with c = 0 satisfy the law identically and are skipped.
    out.push(guarded("DIV_CONTROL", KIND, || {
        let offset = Complex64::new(0.25, 0.1);
        let mut count = 0;
        let mut min = f64::INFINITY;
        for g in elements.iter().filter(|g| g.entries()[2] != 0) {
            for tau in TAU_PROBES {
                for zero in &grid {
                    let (d, scale) = modular_defect(g, zero.point(tau) + offset, tau, &pol)?;
                    min = min.min(d.norm() / scale);
                    count += 1;
                }
            }
        }
        let passed = count > 0 && min > DIV_CONTROL_FLOOR;
        Ok(CheckRecord::flag("DIV_CONTROL", KIND, count, passed, Some(format!("min normalized defect {min:.3e}"))))
    }));

    out.push(guarded("THETA_COCYCLE", KIND, || {
        let mut w = Worst::default();
        for g in &elements {
            for tau in TAU_PROBES {
                w.push(theta_cocycle_residual(g, tau, &pol)?);
            }
        }
        Ok(CheckRecord::residual("THETA_COCYCLE", KIND, w.count, MODULAR_TOL, w.max))
    }));

    out.push(guarded("CHI_MULT", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("CHI_MULT"));
        for trial in 0..50 {
            let (g1, g2) = (random_word(&mut rng, 4), random_word(&mut rng, 4));
            if chi(&(g1 * g2)) != chi(&g1) * chi(&g2) {
                return Ok(CheckRecord::flag(
                    "CHI_MULT",
                    KIND,
                    trial + 1,
                    false,
                    Some(format!("χ({g1}·{g2}) ≠ χ({g1})χ({g2})")),
                ));
            }
        }
        Ok(CheckRecord::flag("CHI_MULT", KIND, 50, true, None))
    }));

    out.push(guarded("K_GAMMA_ID", KIND, || {
        let one = Complex64::new(1.0, 0.0);
        let bad = TAU_PROBES
            .iter()
            .map(|t| k_gamma(&GammaElement::IDENTITY, *t))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|k| *k != one);
        Ok(CheckRecord::flag("K_GAMMA_ID", KIND, TAU_PROBES.len(), bad.is_none(), bad.map(|k| format!("k = {k}"))))
    }));

    out.push(guarded("K_GAMMA_MODULUS", KIND, || {
        let mut w = Worst::default();
        for g in &elements {
            for tau in TAU_PROBES {
                let k = k_gamma(g, tau)?.norm();
                let want = g.automorphy(tau).norm() * (-0.75 * std::f64::consts::PI * (tau - g.mobius(tau)).im).exp();
                w.push((k - want).abs() / want.max(1.0));
            }
        }
        Ok(CheckRecord::residual("K_GAMMA_MODULUS", KIND, w.count, 1e-12, w.max))
    }));

    out.push(guarded("ACT_COMPOSE", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("ACT_COMPOSE"));
        let mut w = Worst::default();
        for _ in 0..cfg.samples.max(1) {
            let (g1, g2) = (random_word(&mut rng, 3), random_word(&mut rng, 3));
            let tau = TAU_PROBES[rng.random_range(0..TAU_PROBES.len())];
            let p = AdditivePoint::new(log_uniform(&mut rng, 0.1, 1.0), tau)?;
            let lhs = act(&g1, &act(&g2, &p));
            let rhs = act(&(g1 * g2), &p);
            w.push(rel(lhs.x(), rhs.x()).max(rel(lhs.tau(), rhs.tau())));
        }
        Ok(CheckRecord::residual("ACT_COMPOSE", KIND, w.count, 1e-12, w.max))
    }));

    out.push(guarded("PHI_PLUGBACK", KIND, || {
        let mut rng = seeded_rng(cfg.sub_seed("PHI_PLUGBACK"));
        let mut w = Worst::default();
        for g in &elements {
            for tau in TAU_PROBES {
                let x = log_uniform(&mut rng, 0.05, 0.4);
                w.push(transformation_law_residual(g, x, tau, &pol)?);
            }
        }
        Ok(CheckRecord::residual("PHI_PLUGBACK", KIND, w.count, 1e-12, w.max))
    }));

    out.push(guarded("PHI_RADIAL", KIND, || {
        // φ_γ near the zero (τ+1)/2 of θ: values at distances 1e-4 and 1e-5 agree
        let mut rng = seeded_rng(cfg.sub_seed("PHI_RADIAL"));
        let mut w = Worst::default();
        for g in &elements {
            let tau = TAU_PROBES[rng.random_range(0..TAU_PROBES.len())];
            let x0 = ThetaZeroIndex::new(0, 0).point(tau);
            let dir = log_uniform(&mut rng, 1.0, 1.0);
            let near = phi_gamma(g, x0 + dir * 1e-4, tau, &pol)?;
            let nearer = phi_gamma(g, x0 + dir * 1e-5, tau, &pol)?;
            w.push(rel(near, nearer));
        }
        Ok(CheckRecord::residual("PHI_RADIAL", KIND, w.count, 1e-3, w.max))
    }));
    out
}
