use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::USeries;
use crate::error::{Error, Result};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign(neg: bool) -> BigRational {
    if neg {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Expansion of `1/(1 − sign·u^k) = Σ_{j≥0} sign^j u^{jk}`.
pub fn geom_inverse(sign: i8, k: usize, trunc: usize) -> Result<USeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("geom_inverse needs k ≥ 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("geom_inverse sign must be ±1, got {sign}")));
    }
    let mut s = USeries::zero(trunc);
    for (j, e) in (0..trunc).step_by(k).enumerate() {
        s.add_monomial(e, &self::sign(sign < 0 && j % 2 == 1));
    }
    Ok(s)
}

/// The three theta null values `θ(1)`, `θ(−1)`, `θ(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaNull {
    /// `θ(1) = Σ u^{n²}`
    Plus,
    /// `θ(−1) = Σ (−1)ⁿ u^{n²}`
    Minus,
    /// `θ(u) = Σ u^{n²+n}`
    Half,
}

pub fn theta_null(which: ThetaNull, trunc: usize) -> USeries {
    let mut s = USeries::zero(trunc);
    let bound = (trunc as f64).sqrt() as i64 + 2;
    for n in -bound..=bound {
        let e = match which {
            ThetaNull::Plus | ThetaNull::Minus => n * n,
            ThetaNull::Half => n * n + n,
        };
        let neg = which == ThetaNull::Minus && n % 2 != 0;
        s.add_monomial(e as usize, &sign(neg));
    }
    s
}

/// `Σ_{n≥0} u^{n²+n}`, i.e. `Σ_{n≥0} q^{n(n+1)/2}`.
pub fn triangular_gf(trunc: usize) -> USeries {
    let mut s = USeries::zero(trunc);
    let mut n = 0usize;
    while n * n + n < trunc {
        s.add_monomial(n * n + n, &BigRational::one());
        n += 1;
    }
    s
}

/// Special values of κ with exact expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaSpecial {
    /// `κ(u, −1)`
    Pp,
    /// `κ(−u, 1)`
    Mp,
    /// `κ(−1, u)`
    MHalf,
}

/// Exact expansion of the chosen κ value:
///
/// - `κ(u, −1) = 2 Σ_{n≥0} (−1)ⁿ u^{n²+2n} / (1 − u^{2n+1})`
/// - `κ(−u, 1) = 2 Σ_{n≥0} u^{n²+2n} / (1 + u^{2n+1})`
/// - `κ(−1, u) = Σ_{n∈ℤ} u^{n²+n} / (1 + u^{2n})`, with the `n < 0` terms
///   written as `u^{n²−n} / (1 + u^{−2n})`.
pub fn kappa_special_series(which: KappaSpecial, trunc: usize) -> USeries {
    let mut s = USeries::zero(trunc);
    match which {
        KappaSpecial::Pp | KappaSpecial::Mp => {
            let two = int(2);
            let mut n = 0usize;
            // exponent n² + 2n increases with n
            while n * n + 2 * n < trunc {
                let (denom_sign, neg) = match which {
                    KappaSpecial::Pp => (1, n % 2 == 1),
                    _ => (-1, false),
                };
                let g = geom_inverse(denom_sign, 2 * n + 1, trunc).expect("k ≥ 1");
                s.add_shifted(n * n + 2 * n, &(&two * sign(neg)), &g);
                n += 1;
            }
        }
        KappaSpecial::MHalf => {
            // n = 0: 1/(1 + 1)
            s.add_monomial(0, &BigRational::new(1.into(), 2.into()));
            let mut m = 1usize;
            // both n = m and n = −m contribute u^{m²+m}/(1 + u^{2m})
            while m * m + m < trunc {
                let g = geom_inverse(-1, 2 * m, trunc).expect("k ≥ 1");
                s.add_shifted(m * m + m, &BigRational::one(), &g);
                s.add_shifted(m * m + m, &BigRational::one(), &g);
                m += 1;
            }
        }
    }
    s
}
