use num_complex::Complex64;

use super::TruncationPolicy;
use crate::error::{Error, Result};

/// A truncated series value together with `Σ|term|`, the scale used by the
/// zero and cancellation guards.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub scale: f64,
    /// Largest `|n|` included.
    pub shells: usize,
}

/// `Σ_{n∈ℤ} weight(n) · p^{n²} · r^n` over a symmetric range `[-N, N]`.
///
/// Monomials are built by the recurrences `m_{n+1} = m_n p^{2n+1} r` and
/// `m_{-(k+1)} = m_{-k} p^{2k+1} / r`, so no large power is ever formed.
/// The sum stops at the first shell `N ≥ MIN_TERMS` where both new terms lie
/// below `eps_term` times the running scale and both monomial ratios are
/// below one (the terms are past their peak).
pub(crate) fn quadratic_sum<F>(
    p: Complex64,
    r: Complex64,
    pol: &TruncationPolicy,
    mut weight: F,
) -> Result<SeriesValue>
where
    F: FnMut(i64) -> Result<Complex64>,
{
    let p2 = p * p;
    let mut sum = weight(0)?;
    let mut abs_sum = sum.norm();
    let mut max_term = abs_sum;
    let mut m_pos = Complex64::new(1.0, 0.0);
    let mut m_neg = m_pos;
    let mut step_pos = p * r;
    let mut step_neg = p / r;

    for k in 1..=pol.n_max {
        m_pos *= step_pos;
        m_neg *= step_neg;
        let n = k as i64;
        let t_pos = m_pos * weight(n)?;
        let t_neg = m_neg * weight(-n)?;
        sum += t_pos + t_neg;
        let (a_pos, a_neg) = (t_pos.norm(), t_neg.norm());
        abs_sum += a_pos + a_neg;
        max_term = max_term.max(a_pos).max(a_neg);
        step_pos *= p2;
        step_neg *= p2;

        if k >= TruncationPolicy::MIN_TERMS
            && step_pos.norm() < 1.0
            && step_neg.norm() < 1.0
        {
            let scale = max_term.max(sum.norm());
            if a_pos <= pol.eps_term * scale && a_neg <= pol.eps_term * scale {
                return Ok(SeriesValue {
                    value: sum,
                    scale: abs_sum,
                    shells: k,
                });
            }
        }
    }
    Err(Error::NonConvergence { n_max: pol.n_max })
}

/// `Σ_{n≥0} term(n)` for terms that eventually decay faster than geometrically.
/// Stops after two consecutive terms below `eps_term` times the running scale.
pub(crate) fn unilateral_sum<F>(pol: &TruncationPolicy, mut term: F) -> Result<Complex64>
where
    F: FnMut(i64) -> Complex64,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_term = 0.0f64;
    let mut quiet = 0;
    for k in 0..=pol.n_max {
        let t = term(k as i64);
        sum += t;
        let a = t.norm();
        max_term = max_term.max(a);
        if a <= pol.eps_term * max_term.max(sum.norm()) {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if k >= TruncationPolicy::MIN_TERMS && quiet >= 2 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { n_max: pol.n_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_sum_matches_direct_loop() {
        let pol = TruncationPolicy::default();
        let p = Complex64::new(0.4, 0.2);
        let r = Complex64::new(1.3, -0.7);
        let got = quadratic_sum(p, r, &pol, |_| Ok(Complex64::new(1.0, 0.0))).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        for n in -40i32..=40 {
            direct += p.powi(n * n) * r.powi(n);
        }
        assert!((got.value - direct).norm() < 1e-14 * direct.norm());
        assert!(got.scale >= got.value.norm());
    }

    #[test]
    fn large_argument_is_summed_past_the_peak() {
        // terms grow until n ≈ 10 before decaying
        let pol = TruncationPolicy::default();
        let p = Complex64::new(0.7, 0.0);
        let r = Complex64::new(1e3, 0.0);
        let got = quadratic_sum(p, r, &pol, |_| Ok(Complex64::new(1.0, 0.0))).unwrap();
        assert!(got.shells > 10);
    }

    #[test]
    fn cap_reached_is_reported() {
        let pol = TruncationPolicy::new(1e-16, 8).unwrap();
        let p = Complex64::new(0.99, 0.0);
        let r = Complex64::new(1.0, 0.0);
        let err = quadratic_sum(p, r, &pol, |_| Ok(Complex64::new(1.0, 0.0))).unwrap_err();
        assert_eq!(err, Error::NonConvergence { n_max: 8 });
    }
}
