use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::AdditivePoint;
use crate::error::{Error, Result};

/// An exact fourth root of unity `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourthRoot(u8);

impl FourthRoot {
    pub const ONE: FourthRoot = FourthRoot(0);
    pub const I: FourthRoot = FourthRoot(1);

    pub fn from_exponent(k: i64) -> Self {
        FourthRoot(k.rem_euclid(4) as u8)
    }

    /// `k` with value `i^k`, `0 ≤ k < 4`.
    pub fn exponent(&self) -> u8 {
        self.0
    }

    pub fn inv(&self) -> Self {
        FourthRoot::from_exponent(-(self.0 as i64))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for FourthRoot {
    type Output = FourthRoot;
    // roots of unity multiply by adding exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: FourthRoot) -> FourthRoot {
        FourthRoot::from_exponent(self.0 as i64 + rhs.0 as i64)
    }
}

impl fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// `[[a, b], [c, d]]` with `ad − bc = 1` and `ac ≡ bd ≡ 0 (mod 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct GammaElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GammaElement {
    pub const IDENTITY: GammaElement = GammaElement { a: 1, b: 0, c: 0, d: 1 };
    /// `τ ↦ τ + 2`
    pub const T2: GammaElement = GammaElement { a: 1, b: 2, c: 0, d: 1 };
    /// `τ ↦ τ / (2τ + 1)`
    pub const L2: GammaElement = GammaElement { a: 1, b: 0, c: 2, d: 1 };
    /// `τ ↦ −1/τ`
    pub const S: GammaElement = GammaElement { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let reject = |reason| Error::NotInGamma12 { a, b, c, d, reason };
        if a.checked_mul(d).zip(b.checked_mul(c)).map(|(x, y)| x - y) != Some(1) {
            return Err(reject("determinant is not 1"));
        }
        if (a * c).rem_euclid(2) != 0 {
            return Err(reject("ac is odd"));
        }
        if (b * d).rem_euclid(2) != 0 {
            return Err(reject("bd is odd"));
        }
        Ok(GammaElement { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        GammaElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `cτ + d`
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    /// `(aτ + b) / (cτ + d)`
    pub fn mobius(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.automorphy(tau)
    }
}

impl TryFrom<[i64; 4]> for GammaElement {
    type Error = Error;
    fn try_from(e: [i64; 4]) -> Result<Self> {
        GammaElement::new(e[0], e[1], e[2], e[3])
    }
}

impl From<GammaElement> for [i64; 4] {
    fn from(g: GammaElement) -> Self {
        g.entries()
    }
}

impl Mul for GammaElement {
    type Output = GammaElement;
    fn mul(self, h: GammaElement) -> GammaElement {
        // closed under multiplication, so no re-validation
        GammaElement {
            a: self.a * h.a + self.b * h.c,
            b: self.a * h.b + self.b * h.d,
            c: self.c * h.a + self.d * h.c,
            d: self.c * h.b + self.d * h.d,
        }
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `(x, τ) ↦ (x / (cτ + d), (aτ + b) / (cτ + d))`
pub fn act(g: &GammaElement, p: &AdditivePoint) -> AdditivePoint {
    let j = g.automorphy(p.tau());
    AdditivePoint::new(p.x() / j, g.mobius(p.tau())).expect("Γ₁,₂ preserves the upper half-plane")
}

/// `ζ(γ)²`: `(−1)^{(d−1)/2}` for odd `d`, `exp(−πic/2)` for odd `c`.
/// Exactly one case applies to every element of Γ₁,₂.
pub fn zeta_sq(g: &GammaElement) -> FourthRoot {
    if g.d.rem_euclid(2) == 1 {
        FourthRoot::from_exponent(2 * ((g.d - 1).div_euclid(2)))
    } else {
        FourthRoot::from_exponent(-g.c)
    }
}

/// `χ(γ) = (−1)^{a/2} exp(πi(ab+cd)/4)` for even `a`, `(−1)^{c/2} exp(πi(ab+cd)/4)`
/// for even `c`. On Γ₁,₂ `ab + cd` is always even, so the value is exact.
pub fn chi(g: &GammaElement) -> FourthRoot {
    let half = if g.a.rem_euclid(2) == 0 { g.a / 2 } else { g.c / 2 };
    let phase = g.a * g.b + g.c * g.d;
    debug_assert_eq!(phase.rem_euclid(2), 0);
    FourthRoot::from_exponent(2 * half + phase / 2)
}

/// `k_γ(τ) = exp(3πi(τ − γτ)/4) · ζ(γ)^{−2} · χ(γ)^{−1} · (cτ + d)`.
pub fn k_gamma(g: &GammaElement, tau: Complex64) -> Result<Complex64> {
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(Error::TauGuard { im_tau: tau.im, min: 0.0 });
    }
    let phase = (Complex64::i() * (3.0 * PI / 4.0) * (tau - g.mobius(tau))).exp();
    let roots = (zeta_sq(g).inv() * chi(g).inv()).to_complex();
    Ok(phase * roots * g.automorphy(tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        assert!(GammaElement::new(1, 2, 0, 1).is_ok());
        assert!(GammaElement::new(1, 1, 0, 1).is_err());
        assert!(GammaElement::new(1, 0, 2, 1).is_ok());
        assert!(GammaElement::new(0, -1, 1, 0).is_ok());
        assert!(GammaElement::new(2, 0, 0, 1).is_err());
        assert!(GammaElement::new(1, 0, 1, 1).is_err());
    }

    #[test]
    fn zeta_sq_branches() {
        assert_eq!(zeta_sq(&GammaElement::IDENTITY), FourthRoot::ONE);
        assert_eq!(zeta_sq(&GammaElement::L2), FourthRoot::ONE);
        assert_eq!(zeta_sq(&GammaElement::S).to_complex(), Complex64::new(0.0, -1.0));
        // d = −1: (−1)^{−1} = −1
        assert_eq!(zeta_sq(&GammaElement::new(-1, 0, 0, -1).unwrap()).exponent(), 2);
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(&GammaElement::IDENTITY), FourthRoot::ONE);
        assert_eq!(chi(&GammaElement::T2), FourthRoot::I);
    }

    #[test]
    fn k_gamma_identity_is_exactly_one() {
        let tau = Complex64::new(0.3, 1.7);
        assert_eq!(k_gamma(&GammaElement::IDENTITY, tau).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn k_gamma_translation_by_two_is_one() {
        for tau in [Complex64::new(0.0, 1.5), Complex64::new(-0.7, 0.4)] {
            let k = k_gamma(&GammaElement::T2, tau).unwrap();
            assert!((k - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn inverse_and_product() {
        let g = GammaElement::T2 * GammaElement::S * GammaElement::L2;
        assert_eq!(g * g.inverse(), GammaElement::IDENTITY);
        let [a, b, c, d] = g.entries();
        assert!(GammaElement::new(a, b, c, d).is_ok());
    }

    #[test]
    fn act_translation() {
        let p = AdditivePoint::new(Complex64::new(0.2, 0.1), Complex64::new(0.1, 1.0)).unwrap();
        let r = act(&GammaElement::T2, &p);
        assert_eq!(r.x(), p.x());
        assert!((r.tau() - p.tau() - 2.0).norm() < 1e-15);
        assert_eq!(act(&GammaElement::IDENTITY, &p), p);
    }
}
