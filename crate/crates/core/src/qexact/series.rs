use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A power series `Σ_{k<N} c_k u^k` with exact rational coefficients; `N` is
/// the truncation order and every coefficient below it is known exactly.
///
/// Binary operations between series of different orders truncate to the
/// smaller one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    coeffs: Vec<BigRational>,
}

impl USeries {
    /// The zero series with `trunc` retained coefficients.
    pub fn zero(trunc: usize) -> Self {
        USeries {
            coeffs: vec![BigRational::zero(); trunc],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, BigRational::one(), trunc)
    }

    /// `c · u^k`, or zero when `k ≥ trunc`.
    pub fn monomial(k: usize, c: BigRational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k < trunc {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        USeries { coeffs }
    }

    /// Integer coefficients, mostly for tests.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        USeries {
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `u^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn coeff_mut(&mut self, k: usize) -> Option<&mut BigRational> {
        self.coeffs.get_mut(k)
    }

    /// Adds `c · u^k` in place, ignoring exponents beyond the truncation order.
    pub fn add_monomial(&mut self, k: usize, c: &BigRational) {
        if let Some(slot) = self.coeffs.get_mut(k) {
            *slot += c;
        }
    }

    /// Adds `c · u^shift · other` in place (truncated to `self`'s order).
    pub fn add_shifted(&mut self, shift: usize, c: &BigRational, other: &USeries) {
        for (k, b) in other.coeffs.iter().enumerate() {
            let Some(slot) = self.coeffs.get_mut(shift + k) else { break };
            if !b.is_zero() {
                *slot += c * b;
            }
        }
    }

    /// The same series retaining only `trunc` coefficients.
    pub fn truncated(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc, BigRational::zero());
        USeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.trunc());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First exponent below the common order where the two series differ.
    pub fn first_difference(&self, other: &USeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Whether every nonzero coefficient sits at an even exponent, i.e. the
    /// series is a power series in `q`.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Coefficients of `q^0, q^1, …` (even `u`-exponents).
    pub fn q_coeffs(&self) -> Vec<BigRational> {
        self.coeffs.iter().step_by(2).cloned().collect()
    }

    /// Horner evaluation of the truncated polynomial in binary64.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + rational_to_f64(c))
    }

    /// One `exponent,numerator,denominator` line per retained coefficient.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k},{},{}", c.numer(), c.denom());
        }
        out
    }

    /// Parses the output of [`USeries::to_csv`]. A leading header line and
    /// blank lines are skipped; missing exponents are zero and the order is
    /// one past the largest exponent seen.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("exponent")) {
                continue;
            }
            let bad = || Error::InvalidArgument(format!("bad series row {}: {line:?}", lineno + 1));
            let mut parts = line.split(',');
            let (Some(k), Some(n), Some(d), None) = (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad());
            };
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            rows.push((k, BigRational::new(n, d)));
        }
        let trunc = rows.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
        let mut s = Self::zero(trunc);
        for (k, c) in rows {
            s.coeffs[k] = c;
        }
        Ok(s)
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add for &USeries {
    type Output = USeries;
    fn add(self, rhs: &USeries) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &USeries {
    type Output = USeries;
    fn sub(self, rhs: &USeries) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &USeries {
    type Output = USeries;
    fn mul(self, rhs: &USeries) -> USeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = USeries::zero(n);
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for USeries {
            type Output = USeries;
            fn $m(self, rhs: USeries) -> USeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for USeries {
    type Output = USeries;
    fn neg(self) -> USeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn difference_of_squares() {
        let p = USeries::from_integers(&[1, 1, 0, 0]);
        let m = USeries::from_integers(&[1, -1, 0, 0]);
        assert_eq!(&p * &m, USeries::from_integers(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_times_one_minus_u() {
        for n in [1, 2, 7, 30] {
            let g = USeries::from_integers(&vec![1; n]);
            let mut f = USeries::one(n);
            f.add_monomial(1, &r(-1));
            assert_eq!(&g * &f, USeries::one(n));
        }
    }

    #[test]
    fn mixed_orders_truncate_to_smaller() {
        let a = USeries::from_integers(&[1, 2, 3, 4, 5]);
        let b = USeries::from_integers(&[1, 1]);
        assert_eq!((&a * &b).trunc(), 2);
        assert_eq!((&a + &b).trunc(), 2);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(USeries::from_csv("0,1\n").is_err());
        assert!(USeries::from_csv("0,1,0\n").is_err());
        assert!(USeries::from_csv("x,1,2\n").is_err());
    }

    #[test]
    fn csv_header_and_gaps() {
        let s = USeries::from_csv("exponent,numerator,denominator\n0,1,2\n3,-4,6\n").unwrap();
        assert_eq!(s.trunc(), 4);
        assert_eq!(s.coeff(3), Some(&BigRational::new((-2).into(), 3.into())));
        assert!(s.coeff(1).unwrap().is_zero());
    }

    #[test]
    fn eval_matches_polynomial() {
        let s = USeries::from_coeffs(vec![r(1), BigRational::new(1.into(), 2.into()), r(-3)]);
        let u = Complex64::new(0.3, 0.1);
        let want = 1.0 + 0.5 * u - 3.0 * u * u;
        assert!((s.eval(u) - want).norm() < 1e-15);
    }

    fn series(max_len: usize) -> impl Strategy<Value = USeries> {
        prop::collection::vec((-9i64..=9, 1i64..=4), 1..max_len).prop_map(|v| {
            USeries::from_coeffs(v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
        })
    }

    fn triple() -> impl Strategy<Value = (USeries, USeries, USeries)> {
        (1usize..=64).prop_flat_map(|n| {
            let s = || {
                prop::collection::vec((-9i64..=9, 1i64..=4), n).prop_map(|v| {
                    USeries::from_coeffs(v.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect())
                })
            };
            (s(), s(), s())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &USeries::one(a.trunc()), a.clone());
        }

        #[test]
        fn csv_round_trip(a in series(40)) {
            prop_assert_eq!(USeries::from_csv(&a.to_csv()).unwrap(), a);
        }

        #[test]
        fn product_coefficient_depends_only_on_lower_terms(a in series(30), b in series(30), k in 0usize..30) {
            let n = a.trunc().min(b.trunc());
            prop_assume!(k < n);
            let full = &a * &b;
            let cut = &a.truncated(k + 1) * &b.truncated(k + 1);
            prop_assert_eq!(full.coeff(k), cut.coeff(k));
        }
    }
}
