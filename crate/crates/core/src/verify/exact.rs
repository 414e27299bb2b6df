use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::{guarded, rel, CheckRecord, SuiteKind, VerifyConfig, Worst};
use crate::error::Error;
use crate::numeric::{kappa, theta, Nome};
use crate::qexact::{
    andrews_series, check_for1_exact, check_for2_exact, double_sum_series, kappa_special_series, theta_null,
    triangular_counts_bruteforce, triangular_gf, ExactOutcome, KappaSpecial, SpecialValues, ThetaNull, USeries,
};

const KIND: SuiteKind = SuiteKind::Exact;

pub fn exact_checks(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let order = cfg.exact_order;
    let mut out = vec![
        guarded("FOR1_EXACT", KIND, || Ok(CheckRecord::exact("FOR1_EXACT", check_for1_exact(order)?))),
        guarded("FOR2_EXACT", KIND, || Ok(CheckRecord::exact("FOR2_EXACT", check_for2_exact(order)?))),
    ];

    let t3 = triangular_gf(order).pow(3);
    let q_order = order.div_ceil(2);

    out.push(guarded("T3_COUNTS", KIND, || {
        let r3 = triangular_counts_bruteforce(q_order);
        let oracle = USeries::from_coeffs(
            (0..order)
                .map(|k| match k % 2 {
                    0 => BigRational::from_integer(r3.r3(k / 2).unwrap_or(0).into()),
                    _ => BigRational::from_integer(0.into()),
                })
                .collect(),
        );
        let mut rec = CheckRecord::exact("T3_COUNTS", ExactOutcome::compare(&t3, &oracle));
        if let Some(m) = r3.counts().iter().position(|&c| c == 0) {
            rec.passed = false;
            rec.note = Some(format!("r3({m}) = 0"));
        }
        Ok(rec)
    }));

    out.push(CheckRecord::exact("DOUBLE_SUM", ExactOutcome::compare(&double_sum_series(order), &t3)));

    out.push(guarded("ANDREWS", KIND, || {
        let an = andrews_series(order);
        let mut rec = CheckRecord::exact("ANDREWS", ExactOutcome::compare(&an, &t3));
        if let Some(m) = an.q_coeffs().iter().position(|c| !c.is_positive()) {
            rec.passed = false;
            rec.note = Some(format!("coefficient of q^{m} is not positive"));
        }
        Ok(rec)
    }));

    out.push(guarded("EXACT_XCHECK", KIND, || {
        if order < 60 {
            return Err(Error::InvalidArgument(format!(
                "numeric cross-check needs order ≥ 60 (got {order}) so that 0.3^order is negligible"
            )));
        }
        let pol = cfg.pol;
        let u = 0.3;
        let nome = Nome::real(u)?;
        let c = |x: f64| Complex64::new(x, 0.0);
        let sv = SpecialValues::new(order);
        let (l1, r1) = sv.for1_sides();
        let (l2, r2) = sv.for2_sides();
        let t = |x: f64| theta(c(x), nome, &pol);
        let (tp, tm, th) = (t(1.0)?, t(-1.0)?, t(u)?);
        let (pp, mp, mh) = (
            kappa(c(u), c(-1.0), nome, &pol)?,
            kappa(c(-u), c(1.0), nome, &pol)?,
            kappa(c(-1.0), c(u), nome, &pol)?,
        );
        let cases = [
            (theta_null(ThetaNull::Plus, order), tp),
            (theta_null(ThetaNull::Minus, order), tm),
            (theta_null(ThetaNull::Half, order), th),
            (kappa_special_series(KappaSpecial::Pp, order), pp),
            (kappa_special_series(KappaSpecial::Mp, order), mp),
            (kappa_special_series(KappaSpecial::MHalf, order), mh),
            (l1, tp * pp + tm * mp),
            (r1, 0.5 * th.powi(3)),
            (l2, th.powi(3) * mh),
            (r2, tm.powi(3) * pp + tp.powi(3) * mp),
        ];
        let mut w = Worst::default();
        for (s, want) in cases {
            w.push(rel(s.eval(c(u)), want));
        }
        Ok(CheckRecord::residual("EXACT_XCHECK", KIND, w.count, 1e-9, w.max))
    }));
    out
}
