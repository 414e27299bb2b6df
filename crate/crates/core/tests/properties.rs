//! Invariants of the public API checked over random inputs.

use approx::assert_relative_eq;
use proptest::prelude::*;

use appell_core::bundle::{build_b, det_spread};
use appell_core::modular::{act, chi, AdditivePoint, GammaElement};
use appell_core::numeric::{kappa, qpochhammer, theta};
use appell_core::qexact::{andrews_series, check_for1_exact, triangular_gf};
use appell_core::{Complex64, Nome, TruncationPolicy};

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn polar(r: f64, t: f64) -> Complex64 {
    Complex64::from_polar(r, t)
}

/// Relative distance measured against `max(|a|, |b|, 1)`.
fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn nome() -> impl Strategy<Value = Nome> {
    (0.05f64..0.6, -3.1f64..3.1).prop_map(|(r, t)| Nome::new(polar(r, t)).unwrap())
}

fn annulus_point() -> impl Strategy<Value = Complex64> {
    (0.4f64..2.5, -3.1f64..3.1).prop_map(|(r, t)| polar(r, t))
}

fn gamma_word() -> impl Strategy<Value = GammaElement> {
    let letters = [
        GammaElement::T2,
        GammaElement::T2.inverse(),
        GammaElement::L2,
        GammaElement::L2.inverse(),
        GammaElement::S,
    ];
    prop::collection::vec(0usize..letters.len(), 0..6)
        .prop_map(move |w| w.into_iter().fold(GammaElement::IDENTITY, |g, i| g * letters[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_is_quasi_periodic_and_symmetric(n in nome(), z in annulus_point()) {
        let t = theta(z, n, &pol()).unwrap();
        let shifted = theta(n.q() * z, n, &pol()).unwrap();
        prop_assert!(rel(shifted, t / (n.u() * z)) < 1e-11);
        prop_assert!(rel(theta(z.inv(), n, &pol()).unwrap(), t) < 1e-11);
    }

    #[test]
    fn theta_matches_triple_product(n in nome(), z in annulus_point()) {
        let (u, q) = (n.u(), n.q());
        let prod = qpochhammer(q, q, &pol()).unwrap()
            * qpochhammer(-u * z, q, &pol()).unwrap()
            * qpochhammer(-u / z, q, &pol()).unwrap();
        prop_assert!(rel(theta(z, n, &pol()).unwrap(), prod) < 1e-10);
    }

    #[test]
    fn kappa_solves_its_difference_equation(
        n in nome(),
        z in annulus_point(),
        (ar, at) in (0.3f64..2.0, -3.1f64..3.1),
    ) {
        let a = polar(ar, at);
        prop_assume!((0..=3).all(|k| (a - n.q().powi(k)).norm() > 1e-3 && (a - n.q().powi(-k)).norm() > 1e-3));
        let lhs = kappa(a, n.q() * z, n, &pol()).unwrap();
        let rhs = a * kappa(a, z, n, &pol()).unwrap() + theta(z, n, &pol()).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-9);
    }

    #[test]
    fn gauge_b_has_constant_determinant(
        (r, t) in (0.1f64..0.5, -3.1f64..3.1),
        (ar, at) in (0.4f64..1.8, -3.1f64..3.1),
    ) {
        let n = Nome::new(polar(r, t)).unwrap();
        let a = polar(ar, at);
        prop_assume!((a - 1.0).norm() > 0.05);
        let b = build_b(a, n, &pol()).unwrap();
        let points: Vec<Complex64> = (0..8).map(|k| polar(0.7 + 0.1 * k as f64, 0.9 * k as f64)).collect();
        let spread = det_spread(&b, &points).unwrap();
        prop_assert!(spread.spread < 1e-9, "{spread:?}");
    }

    #[test]
    fn chi_is_multiplicative(g in gamma_word(), h in gamma_word()) {
        prop_assert_eq!(chi(&(g * h)), chi(&g) * chi(&h));
    }

    #[test]
    fn words_stay_in_the_group_and_act_compatibly(
        g in gamma_word(),
        h in gamma_word(),
        x in (-0.5f64..0.5, -0.5f64..0.5),
    ) {
        let gh = g * h;
        let [a, b, c, d] = gh.entries();
        prop_assert_eq!(a * d - b * c, 1);
        prop_assert!(GammaElement::new(a, b, c, d).is_ok());
        prop_assert_eq!(g * g.inverse(), GammaElement::IDENTITY);

        let p = AdditivePoint::new(Complex64::new(x.0, x.1), Complex64::new(0.25, 1.3)).unwrap();
        let lhs = act(&g, &act(&h, &p));
        let rhs = act(&gh, &p);
        prop_assert!(rel(lhs.tau(), rhs.tau()) < 1e-12);
        prop_assert!(rel(lhs.x(), rhs.x()) < 1e-12);
    }
}

#[test]
fn exact_triangular_series_matches_numeric_theta() {
    // θ(u; u) = Σ u^{n(n+1)} counts each triangular number twice
    let gf = triangular_gf(80);
    for u in [Complex64::new(0.2, 0.0), Complex64::new(0.1, 0.25), Complex64::new(-0.3, 0.05)] {
        let n = Nome::new(u).unwrap();
        let numeric = theta(u, n, &pol()).unwrap();
        assert_relative_eq!((gf.eval(u) * 2.0 - numeric).norm(), 0.0, epsilon = 1e-14);
    }
}

#[test]
fn andrews_series_evaluates_to_the_cube() {
    let (gf, andrews) = (triangular_gf(60), andrews_series(60));
    let u = Complex64::new(0.35, 0.1);
    let cube = gf.eval(u).powi(3);
    assert_relative_eq!(andrews.eval(u).re, cube.re, max_relative = 1e-12);
    assert_relative_eq!(andrews.eval(u).im, cube.im, max_relative = 1e-12);
}

#[test]
fn exact_check_passes_at_every_small_order() {
    for trunc in 2..=24 {
        assert!(check_for1_exact(trunc).unwrap().passed(), "trunc {trunc}");
    }
}
