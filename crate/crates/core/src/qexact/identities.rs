use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::special::{geom_inverse, kappa_special_series, theta_null, KappaSpecial, ThetaNull};
use super::USeries;
use crate::error::{Error, Result};

/// Result of a coefficient-exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExactOutcome {
    Pass { trunc: usize },
    /// `exponent` is the first `u`-exponent where the sides differ.
    Fail { exponent: usize, lhs: String, rhs: String },
}

impl ExactOutcome {
    pub fn compare(lhs: &USeries, rhs: &USeries) -> Self {
        match lhs.first_difference(rhs) {
            None => ExactOutcome::Pass {
                trunc: lhs.trunc().min(rhs.trunc()),
            },
            Some(k) => ExactOutcome::Fail {
                exponent: k,
                lhs: lhs.coeffs()[k].to_string(),
                rhs: rhs.coeffs()[k].to_string(),
            },
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, ExactOutcome::Pass { .. })
    }
}

/// The six special series entering the two κ-value identities. Fields are
/// public so a caller can perturb one and watch the comparison fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialValues {
    pub theta_plus: USeries,
    pub theta_minus: USeries,
    pub theta_half: USeries,
    pub pp: USeries,
    pub mp: USeries,
    pub m_half: USeries,
}

impl SpecialValues {
    pub fn new(trunc: usize) -> Self {
        SpecialValues {
            theta_plus: theta_null(ThetaNull::Plus, trunc),
            theta_minus: theta_null(ThetaNull::Minus, trunc),
            theta_half: theta_null(ThetaNull::Half, trunc),
            pp: kappa_special_series(KappaSpecial::Pp, trunc),
            mp: kappa_special_series(KappaSpecial::Mp, trunc),
            m_half: kappa_special_series(KappaSpecial::MHalf, trunc),
        }
    }

    /// `θ(1)κ(u,−1) + θ(−1)κ(−u,1)` and `½θ(u)³`.
    pub fn for1_sides(&self) -> (USeries, USeries) {
        let lhs = &(&self.theta_plus * &self.pp) + &(&self.theta_minus * &self.mp);
        let rhs = self.theta_half.pow(3).scale(&BigRational::new(1.into(), 2.into()));
        (lhs, rhs)
    }

    /// `θ(u)³κ(−1,u)` and `θ(−1)³κ(u,−1) + θ(1)³κ(−u,1)`.
    pub fn for2_sides(&self) -> (USeries, USeries) {
        let lhs = &self.theta_half.pow(3) * &self.m_half;
        let rhs = &(&self.theta_minus.pow(3) * &self.pp) + &(&self.theta_plus.pow(3) * &self.mp);
        (lhs, rhs)
    }
}

fn check_order(trunc: usize) -> Result<()> {
    if trunc < 2 {
        return Err(Error::InvalidArgument(format!("exact checks need trunc ≥ 2, got {trunc}")));
    }
    Ok(())
}

/// `θ(1)κ(u,−1) + θ(−1)κ(−u,1) = ½θ(u)³` to `u`-order `trunc`.
pub fn check_for1_exact(trunc: usize) -> Result<ExactOutcome> {
    check_order(trunc)?;
    let (l, r) = SpecialValues::new(trunc).for1_sides();
    Ok(ExactOutcome::compare(&l, &r))
}

/// `θ(u)³κ(−1,u) = θ(−1)³κ(u,−1) + θ(1)³κ(−u,1)` to `u`-order `trunc`.
pub fn check_for2_exact(trunc: usize) -> Result<ExactOutcome> {
    check_order(trunc)?;
    let (l, r) = SpecialValues::new(trunc).for2_sides();
    Ok(ExactOutcome::compare(&l, &r))
}

/// `Σ_{n≥0, l∈ℤ} (−1)ⁿ q^{n²+n−2nl+2l²}(1+q^{2l+1})/(1−q^{2n+1})` to `u`-order
/// `trunc`.
pub fn double_sum_series(trunc: usize) -> USeries {
    double_sum_series_extended(trunc, 0)
}

/// [`double_sum_series`] with the `(n, l)` enumeration widened by `extra`
/// shells in each direction; the result must not change.
///
/// Writing the two pieces of a term as `q^{E₁}` and `q^{E₂}` with
/// `E₁ = (n−l)² + l² + n` and `E₂ = (n−l)² + (l+1)² + n`, both are `≥ n`,
/// `E₁ ≥ l²` and `E₂ ≥ (l+1)²`. With `Q = ⌈trunc/2⌉` only `n < Q` and
/// `|l| ≤ ⌊√Q⌋ + 1` can reach `q^{<Q}`.
pub fn double_sum_series_extended(trunc: usize, extra: usize) -> USeries {
    let q_order = trunc.div_ceil(2);
    let n_bound = q_order + extra;
    let l_bound = (q_order.isqrt() + 1 + extra) as i64;
    let mut s = USeries::zero(trunc);
    for n in 0..n_bound {
        let g = geom_inverse(1, 2 * (2 * n + 1), trunc).expect("k ≥ 1");
        let sg = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let ni = n as i64;
        for l in -l_bound..=l_bound {
            let e1 = (ni - l).pow(2) + l * l + ni;
            let e2 = (ni - l).pow(2) + (l + 1).pow(2) + ni;
            for e in [e1, e2] {
                debug_assert!(e >= 0);
                s.add_shifted(2 * e as usize, &sg, &g);
            }
        }
    }
    s
}

/// `Σ_{n≥0} Σ_{0≤j≤2n} q^{2n²+2n−j(j+1)/2}(1+q^{2n+1})/(1−q^{2n+1})` to
/// `u`-order `trunc`. The exponent is at least `n`, so `n < ⌈trunc/2⌉`.
pub fn andrews_series(trunc: usize) -> USeries {
    let q_order = trunc.div_ceil(2);
    let mut s = USeries::zero(trunc);
    for n in 0..q_order {
        // (1+x)/(1−x) = 2/(1−x) − 1
        let mut factor = geom_inverse(1, 2 * (2 * n + 1), trunc)
            .expect("k ≥ 1")
            .scale(&BigRational::from_integer(2.into()));
        factor.add_monomial(0, &-BigRational::one());
        for j in 0..=2 * n {
            let e = 2 * n * n + 2 * n - j * (j + 1) / 2;
            s.add_shifted(2 * e, &BigRational::one(), &factor);
        }
    }
    s
}

/// `r₃(m)`: ordered triples of triangular numbers summing to `m`, for `m < M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularCounts {
    counts: Vec<u64>,
}

impl TriangularCounts {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn r3(&self, m: usize) -> Option<u64> {
        self.counts.get(m).copied()
    }
}

/// Counts `r₃(m)` for `m < M` by enumerating all triples.
pub fn triangular_counts_bruteforce(m: usize) -> TriangularCounts {
    let tri: Vec<usize> = (0..).map(|n: usize| n * (n + 1) / 2).take_while(|&t| t < m).collect();
    let mut counts = vec![0u64; m];
    for &a in &tri {
        for &b in &tri {
            for &c in &tri {
                if a + b + c < m {
                    counts[a + b + c] += 1;
                }
            }
        }
    }
    TriangularCounts { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::triangular_gf;
    use num_traits::{Signed, Zero};

    #[test]
    fn for1_and_for2_constant_terms() {
        assert!(check_for1_exact(2).unwrap().passed());
        assert!(check_for2_exact(2).unwrap().passed());
        let (l, _) = SpecialValues::new(2).for1_sides();
        assert_eq!(l.coeff(0), Some(&BigRational::from_integer(4.into())));
        assert!(check_for1_exact(1).is_err());
    }

    #[test]
    fn for1_and_for2_hold_to_order_80() {
        assert_eq!(check_for1_exact(80).unwrap(), ExactOutcome::Pass { trunc: 80 });
        assert_eq!(check_for2_exact(80).unwrap(), ExactOutcome::Pass { trunc: 80 });
    }

    #[test]
    fn perturbation_is_detected() {
        let mut sv = SpecialValues::new(30);
        *sv.theta_plus.coeff_mut(4).unwrap() += BigRational::one();
        let (l, r) = sv.for1_sides();
        match ExactOutcome::compare(&l, &r) {
            ExactOutcome::Fail { exponent, .. } => assert_eq!(exponent, 4),
            other => panic!("{other:?}"),
        }
        let (l, r) = sv.for2_sides();
        assert!(matches!(ExactOutcome::compare(&l, &r), ExactOutcome::Fail { exponent: 4, .. }));
    }

    #[test]
    fn triangular_counts_examples() {
        let r = triangular_counts_bruteforce(7);
        assert_eq!(r.counts(), &[1, 3, 3, 4, 6, 3, 6]);
    }

    #[test]
    fn cube_matches_bruteforce_counts() {
        let t3 = triangular_gf(80).pow(3);
        let r = triangular_counts_bruteforce(40);
        for (m, c) in t3.q_coeffs().iter().enumerate() {
            assert_eq!(*c, BigRational::from_integer(r.r3(m).unwrap().into()));
            assert!(r.r3(m).unwrap() >= 1);
        }
    }

    #[test]
    fn double_sum_and_andrews_match_cube() {
        let t3 = triangular_gf(80).pow(3);
        let ds = double_sum_series(80);
        let an = andrews_series(80);
        assert_eq!(ds, t3);
        assert_eq!(an, t3);
        assert_eq!(ds.coeff(0), Some(&BigRational::one()));
        assert!(an.q_coeffs().iter().all(|c| c.is_positive() && c.is_integer()));
        assert!(an.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero));
    }

    #[test]
    fn extra_shells_change_nothing() {
        for trunc in [1, 9, 40, 81] {
            assert_eq!(double_sum_series(trunc), double_sum_series_extended(trunc, 3));
        }
    }
}
