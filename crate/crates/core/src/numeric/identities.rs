//! Registry of identities with free complex parameters.
//!
//! Each entry evaluates its left and right hand sides literally, so a residual
//! check exercises θ, κ and κ̄ independently of how the identity was derived.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    dtheta_dz, kappa, kappa_bar, kappa_pole_margin, nonzero, qpochhammer, theta,
    theta_zero_margin, vartheta0, vartheta1, Nome, TruncationPolicy,
};
use crate::error::{Error, Result};
use crate::modular::kappa0;

/// Below this guard margin an identity refuses to evaluate.
const DOMAIN_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Z,
    A,
    B,
    /// A chosen square root of `a`.
    S,
    /// A chosen square root of `u`, i.e. `q^{1/4}`.
    V,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::A => "a",
            Var::B => "b",
            Var::S => "s",
            Var::V => "v",
        }
    }
}

/// Named bindings of nonzero complex values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    bindings: BTreeMap<Var, Complex64>,
}

impl EvalPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: Complex64) -> Result<Self> {
        self.bind(var, value)?;
        Ok(self)
    }

    pub fn bind(&mut self, var: Var, value: Complex64) -> Result<()> {
        nonzero(value, var.name())?;
        self.bindings.insert(var, value);
        Ok(())
    }

    pub fn get(&self, var: Var) -> Option<Complex64> {
        self.bindings.get(&var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Complex64)> + '_ {
        self.bindings.iter().map(|(k, v)| (*k, *v))
    }

    fn require(&self, var: Var, id: IdentityId) -> Result<Complex64> {
        self.get(var)
            .ok_or_else(|| Error::domain(id.as_str(), format!("missing binding `{}`", var.name())))
    }
}

/// Outcome of comparing two sides of an identity at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_id: String,
    pub point: EvalPoint,
    pub u: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    /// `max(|lhs|, |rhs|, 1)`
    pub scale: f64,
    pub rel_residual: f64,
}

impl ResidualReport {
    pub fn new(
        identity_id: impl Into<String>,
        point: EvalPoint,
        u: Complex64,
        lhs: Complex64,
        rhs: Complex64,
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        ResidualReport {
            identity_id: identity_id.into(),
            point,
            u,
            lhs,
            rhs,
            abs_residual,
            scale,
            rel_residual: abs_residual / scale,
        }
    }

    /// Keeps whichever of the two reports has the larger relative residual.
    pub fn worst(self, other: ResidualReport) -> ResidualReport {
        if other.rel_residual > self.rel_residual || other.rel_residual.is_nan() {
            other
        } else {
            self
        }
    }
}

macro_rules! identities {
    ($($variant:ident => $name:literal, [$($var:ident),*];)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($variant),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn as_str(&self) -> &'static str {
                match self { $(IdentityId::$variant => $name),* }
            }

            /// Variables the identity needs bound in its [`EvalPoint`].
            pub fn vars(&self) -> &'static [Var] {
                match self { $(IdentityId::$variant => &[$(Var::$var),*]),* }
            }
        }

        impl FromStr for IdentityId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(IdentityId::$variant),)*
                    _ => Err(Error::UnknownIdentity(s.to_string())),
                }
            }
        }
    };
}

identities! {
    Def => "DEF", [Z, A];
    Inv => "INV", [Z, A];
    Def2 => "DEF2", [Z, A];
    Sym => "SYM", [Z, A];
    Sqrt => "SQRT", [Z, S, V];
    Addf => "ADDF", [Z, A, V];
    Hadd => "HADD", [Z, A, B];
    Sp1 => "SP1", [A];
    Hadd2 => "HADD2", [Z, A, B];
    Hadd3 => "HADD3", [Z, A];
    Sp2 => "SP2", [];
    Sp3 => "SP3", [];
    Sp4 => "SP4", [];
    Sp5 => "SP5", [];
    HalfserP => "HALFSER_P", [Z];
    HalfserM => "HALFSER_M", [Z];
    Id4 => "ID4", [B];
    Id5Sum => "ID5SUM", [B];
    Id5Prod => "ID5PROD", [B];
    Id55 => "ID55", [Z, A];
    Id6 => "ID6", [B];
    For1 => "FOR1", [];
    For2 => "FOR2", [];
    Jac => "JAC", [];
    Quasi => "QUASI", [];
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

enum Guard {
    /// κ(a, ·) must stay away from `a ∈ q^ℤ`.
    Pole(Complex64),
    /// θ(w) appears in a denominator.
    ThetaDenominator(Complex64),
}

struct Ctx<'a> {
    nome: Nome,
    pol: &'a TruncationPolicy,
}

impl Ctx<'_> {
    fn t(&self, z: Complex64) -> Result<Complex64> {
        theta(z, self.nome, self.pol)
    }

    fn k(&self, a: Complex64, z: Complex64) -> Result<Complex64> {
        kappa(a, z, self.nome, self.pol)
    }

    fn kb(&self, a: Complex64, z: Complex64) -> Result<Complex64> {
        kappa_bar(a, z, self.nome, self.pol)
    }

    fn poch(&self, x: Complex64) -> Result<Complex64> {
        qpochhammer(x, self.nome.q(), self.pol)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl IdentityId {
    fn guards(&self, p: &EvalPoint, nome: Nome) -> Result<Vec<Guard>> {
        use Guard::*;
        let u = nome.u();
        let get = |v| p.require(v, *self);
        Ok(match self {
            IdentityId::Def | IdentityId::Inv | IdentityId::Def2 => {
                let a = get(Var::A)?;
                vec![Pole(a), Pole(a.inv())]
            }
            IdentityId::Sym => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                vec![Pole(a), Pole(-u * z)]
            }
            IdentityId::Sqrt => {
                let (s, v, z) = (get(Var::S)?, get(Var::V)?, get(Var::Z)?);
                let mut g = vec![Pole(s * s * z)];
                for s in [s, -s] {
                    g.push(Pole(s / v));
                    g.push(Pole(v * s));
                }
                g
            }
            IdentityId::Addf => vec![],
            IdentityId::Hadd | IdentityId::Hadd2 => {
                let (a, b) = (get(Var::A)?, get(Var::B)?);
                vec![
                    Pole(a * b),
                    Pole(a),
                    ThetaDenominator(-a / u),
                    ThetaDenominator(-a * b / u),
                ]
            }
            IdentityId::Sp1 => {
                let a = get(Var::A)?;
                vec![Pole(a), ThetaDenominator(-a / u)]
            }
            IdentityId::Hadd3 => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                vec![
                    Pole(a),
                    ThetaDenominator(a * z / u),
                    ThetaDenominator(-a / u),
                ]
            }
            IdentityId::Sp2
            | IdentityId::Sp3
            | IdentityId::Sp4
            | IdentityId::Sp5
            | IdentityId::HalfserP
            | IdentityId::HalfserM
            | IdentityId::For1
            | IdentityId::For2
            | IdentityId::Jac
            | IdentityId::Quasi => vec![],
            IdentityId::Id4 | IdentityId::Id5Sum | IdentityId::Id5Prod => {
                let b = get(Var::B)?;
                vec![Pole(u / b), ThetaDenominator(-b)]
            }
            IdentityId::Id6 => {
                let b = get(Var::B)?;
                vec![Pole(u / b)]
            }
            IdentityId::Id55 => {
                let a = get(Var::A)?;
                vec![
                    Pole(a),
                    Pole(-a),
                    ThetaDenominator(u / a),
                    ThetaDenominator(-u / a),
                ]
            }
        })
    }

    /// Smallest relative distance to any pole or denominator zero the
    /// identity touches at this point; `+∞` when there is none.
    pub fn guard_margin(&self, p: &EvalPoint, nome: Nome, pol: &TruncationPolicy) -> Result<f64> {
        for v in self.vars() {
            p.require(*v, *self)?;
        }
        let mut margin = f64::INFINITY;
        for g in self.guards(p, nome)? {
            let m = match g {
                Guard::Pole(a) => kappa_pole_margin(a, nome),
                Guard::ThetaDenominator(w) => theta_zero_margin(w, nome, pol)?,
            };
            margin = margin.min(m);
        }
        Ok(margin)
    }

    /// All `(lhs, rhs)` pairs the identity asserts at this point.
    fn sides(&self, p: &EvalPoint, nome: Nome, pol: &TruncationPolicy) -> Result<Vec<(Complex64, Complex64)>> {
        let x = Ctx { nome, pol };
        let u = nome.u();
        let q = nome.q();
        let get = |v| p.require(v, *self);
        let one = c(1.0);
        Ok(match self {
            IdentityId::Def => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                vec![(x.k(a, q * z)?, a * x.k(a, z)? + x.t(z)?)]
            }
            IdentityId::Inv => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                vec![(x.k(a, z)?, -x.k(a.inv(), q / z)? / a)]
            }
            IdentityId::Def2 => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                let lhs = x.k(q * a, z)?;
                vec![
                    (lhs, z / u * x.k(a, q * z)?),
                    (lhs, a * z / u * x.k(a, z)? + z / u * x.t(z)?),
                ]
            }
            IdentityId::Sym => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                vec![(a * x.kb(a, z)?, -u * z * x.kb(-u * z, -a / u)?)]
            }
            IdentityId::Sqrt => {
                let (s0, v, z) = (get(Var::S)?, get(Var::V)?, get(Var::Z)?);
                if (v * v - u).norm() > 1e-12 * u.norm() {
                    return Err(Error::domain(self.as_str(), "binding v must satisfy v² = u"));
                }
                let a = s0 * s0;
                if let Some(a_bound) = p.get(Var::A) {
                    if (a_bound - a).norm() > 1e-12 * a.norm() {
                        return Err(Error::domain(self.as_str(), "binding s must satisfy s² = a"));
                    }
                }
                let vn = Nome::new(v)?;
                let i = Complex64::i();
                let lhs = x.kb(a * z, z.inv())?;
                let th0_i = vartheta0(i, vn, pol)?;
                let th1_iu = vartheta1(i * u, vn, pol)?;
                let mut out = Vec::with_capacity(2);
                for s in [s0, -s0] {
                    let w = i * v * s * z;
                    let rhs = vartheta0(w, vn, pol)? / th0_i * x.kb(s / v, v * s)?
                        + vartheta1(w, vn, pol)? / th1_iu * x.kb(v * s, s / v)?;
                    out.push((lhs, rhs));
                }
                out
            }
            IdentityId::Addf => {
                let (a, z, v) = (get(Var::A)?, get(Var::Z)?, get(Var::V)?);
                if (v * v - u).norm() > 1e-12 * u.norm() {
                    return Err(Error::domain(self.as_str(), "binding v must satisfy v² = u"));
                }
                let vn = Nome::new(v)?;
                let lhs = x.t(z * a)? * x.t(z / a)?;
                let rhs = vartheta0(a, vn, pol)? * vartheta0(z, vn, pol)?
                    + vartheta1(a, vn, pol)? * vartheta1(z, vn, pol)?;
                vec![(lhs, rhs)]
            }
            IdentityId::Hadd => {
                let (a, b, z) = (get(Var::A)?, get(Var::B)?, get(Var::Z)?);
                let lhs = x.t(b * z)? * x.k(a * b, z)? - x.t(z)? * x.k(a, b * z)? / b;
                let rhs = x.t(-u * b)? * x.t(z / a)? / x.t(-a / u)? * x.k(a * b, -u)?;
                vec![(lhs, rhs)]
            }
            IdentityId::Sp1 => {
                let a = get(Var::A)?;
                let rhs = x.t(one)? * x.t(-one)? * x.t(u)? / (2.0 * x.t(-a / u)?);
                vec![(x.k(a, -u)?, rhs)]
            }
            IdentityId::Hadd2 => {
                let (a, b, z) = (get(Var::A)?, get(Var::B)?, get(Var::Z)?);
                let lhs = x.t(b * z)? * x.k(a * b, z)? - x.t(z)? * x.k(a, b * z)? / b;
                let rhs = x.t(one)? * x.t(-one)? * x.t(u)? * x.t(-u * b)? * x.t(z / a)?
                    / (2.0 * x.t(-a / u)? * x.t(-a * b / u)?);
                vec![(lhs, rhs)]
            }
            IdentityId::Hadd3 => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                let den = x.t(a * z / u)?;
                let rhs = u / a * x.t(z)? / den * x.k(u, a * z / u)?
                    + x.t(one)? * x.t(u)? * x.t(-a)? * x.t(z / u)? / (2.0 * x.t(-a / u)? * den);
                vec![(x.k(a, z)?, rhs)]
            }
            IdentityId::Sp2 => vec![(x.k(-u, -u)?, 0.5 * x.t(-one)? * x.t(u)?)],
            IdentityId::Sp3 => vec![(x.k(-one, -u)?, 0.5 * x.t(one)? * x.t(-one)?)],
            IdentityId::Sp4 => vec![
                (x.k(-one, one)?, 0.5 * x.t(one)?),
                (x.k(-one, -one)?, 0.5 * x.t(-one)?),
            ],
            IdentityId::Sp5 => {
                let half = 0.5 * x.t(u)?;
                vec![(x.k(u, u)?, half), (x.k(-u, u)?, half)]
            }
            IdentityId::HalfserP | IdentityId::HalfserM => {
                let z = get(Var::Z)?;
                let sign = if *self == IdentityId::HalfserP { 1.0 } else { -1.0 };
                // Σ_{n≥0} u^{n²+2n} / (1 − sign·u^{2n+1}) · (z^{−n} − sign·z^{n+1})
                let series = super::series::unilateral_sum(pol, |n| {
                    let n = n as i32;
                    u.powi(n * n + 2 * n) / (one - sign * u.powi(2 * n + 1))
                        * (z.powi(-n) - sign * z.powi(n + 1))
                })?;
                vec![(x.k(sign * u, z)?, series)]
            }
            IdentityId::Id4 => {
                let b = get(Var::B)?;
                // the last factor is θ(−q^{−1/2} b); θ(−q^{1/2} b) does not satisfy the identity
                let rhs = x.t(b / u)? + x.t(one)? * x.t(b)? / x.t(-b)? * x.t(-b / u)?;
                vec![(2.0 * x.k(u / b, u * b)?, rhs)]
            }
            IdentityId::Id5Sum => {
                let b = get(Var::B)?;
                let rhs = x.t(u)? * x.t(b / u)? * x.t(-b / u)? / (2.0 * x.t(-b)?);
                vec![(x.k(u / b, b)?, rhs)]
            }
            IdentityId::Id5Prod => {
                let b = get(Var::B)?;
                let num = x.poch(q)?.powi(2)
                    * x.poch(-q)?.powi(2)
                    * x.poch(-b)?
                    * x.poch(-q / b)?
                    * x.poch(b)?
                    * x.poch(q / b)?;
                let den = x.poch(u * b)? * x.poch(u / b)?;
                vec![(x.k(u / b, b)?, num / den)]
            }
            IdentityId::Id55 => {
                let (a, z) = (get(Var::A)?, get(Var::Z)?);
                let lhs = x.t(-z)? * x.k(a, z)? + x.t(z)? * x.k(-a, -z)?;
                let rhs = x.t(u)?.powi(2) * x.t(one)? * x.t(-one)? * x.t(-z / a)?
                    / (2.0 * x.t(u / a)? * x.t(-u / a)?);
                vec![(lhs, rhs)]
            }
            IdentityId::Id6 => {
                let b = get(Var::B)?;
                let lhs = x.t(u)?.powi(2) * x.t(-b)? * x.k(u / b, -b)?;
                let rhs = x.t(u / b)?.powi(2) * x.t(-one)? * x.k(u, -one)?
                    + x.t(-u / b)?.powi(2) * x.t(one)? * x.k(-u, one)?;
                vec![(lhs, rhs)]
            }
            IdentityId::For1 => {
                let lhs = x.t(one)? * x.k(u, -one)? + x.t(-one)? * x.k(-u, one)?;
                vec![(lhs, 0.5 * x.t(u)?.powi(3))]
            }
            IdentityId::For2 => {
                let lhs = x.t(u)?.powi(3) * x.k(-one, u)?;
                let rhs = x.t(-one)?.powi(3) * x.k(u, -one)? + x.t(one)?.powi(3) * x.k(-u, one)?;
                vec![(lhs, rhs)]
            }
            IdentityId::Jac => {
                let lhs = dtheta_dz(-u.inv(), nome, pol)? / u;
                vec![(lhs, 0.5 * x.t(one)? * x.t(-one)? * x.t(u)?)]
            }
            IdentityId::Quasi => {
                let tau = nome.tau();
                let x0 = (tau + 1.0) / 2.0;
                let base = kappa0(x0, tau, pol)?;
                let mut out = Vec::with_capacity(25);
                for m in -2..=2 {
                    for n in -2..=2 {
                        let shifted = kappa0(x0 + m as f64 + n as f64 * tau, tau, pol)?;
                        let factor = (Complex64::i() * PI * n as f64 * (tau + 1.0)).exp();
                        out.push((shifted, factor * base));
                    }
                }
                out
            }
        })
    }
}

/// Evaluates both sides of `id` at `(point, nome)` and reports the worst
/// relative residual over the pairs the identity asserts.
pub fn identity_residual(
    id: IdentityId,
    point: &EvalPoint,
    nome: Nome,
    pol: &TruncationPolicy,
) -> Result<ResidualReport> {
    let margin = id.guard_margin(point, nome, pol)?;
    if margin < DOMAIN_MARGIN {
        return Err(Error::domain(
            id.as_str(),
            format!("point within {margin:e} of a pole or denominator zero"),
        ));
    }
    id.sides(point, nome, pol)?
        .into_iter()
        .map(|(l, r)| ResidualReport::new(id.as_str(), point.clone(), nome.u(), l, r))
        .reduce(ResidualReport::worst)
        .ok_or_else(|| Error::domain(id.as_str(), "no sides evaluated"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), *id);
        }
        assert_eq!(IdentityId::ALL.len(), 25);
        assert!("bogus".parse::<IdentityId>().is_err());
    }

    #[test]
    fn sp4_at_minus_one() {
        let nome = Nome::new(c2(0.3, 0.1)).unwrap();
        let r = identity_residual(IdentityId::Sp4, &EvalPoint::new(), nome, &Default::default()).unwrap();
        assert!(r.rel_residual < 1e-10);
    }

    #[test]
    fn def_degenerates_at_tiny_nome() {
        let nome = Nome::real(1e-9).unwrap();
        let p = EvalPoint::new().with(Var::A, c2(0.4, 0.3)).unwrap().with(Var::Z, c2(1.2, -0.5)).unwrap();
        let r = identity_residual(IdentityId::Def, &p, nome, &Default::default()).unwrap();
        assert!(r.rel_residual < 1e-15);
    }

    #[test]
    fn missing_binding_is_domain_error() {
        let nome = Nome::real(0.3).unwrap();
        let p = EvalPoint::new().with(Var::Z, c2(1.0, 0.0)).unwrap();
        let err = identity_residual(IdentityId::Hadd, &p, nome, &Default::default()).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn zero_binding_rejected() {
        assert!(EvalPoint::new().with(Var::A, c2(0.0, 0.0)).is_err());
    }

    #[test]
    fn pole_binding_rejected() {
        let nome = Nome::real(0.4).unwrap();
        let p = EvalPoint::new().with(Var::A, nome.q()).unwrap().with(Var::Z, c2(1.0, 0.0)).unwrap();
        assert!(identity_residual(IdentityId::Def, &p, nome, &Default::default()).is_err());
    }

    #[test]
    fn sqrt_checks_both_branches_of_s() {
        let nome = Nome::new(c2(0.35, 0.2)).unwrap();
        let v = nome.u().sqrt();
        let p = EvalPoint::new()
            .with(Var::Z, c2(0.9, 0.4)).unwrap()
            .with(Var::S, c2(1.1, -0.2)).unwrap()
            .with(Var::V, -v).unwrap();
        let r = identity_residual(IdentityId::Sqrt, &p, nome, &Default::default()).unwrap();
        assert!(r.rel_residual < 1e-12, "{r:?}");
    }

    #[test]
    fn sqrt_rejects_inconsistent_quarter_nome() {
        let nome = Nome::new(c2(0.35, 0.2)).unwrap();
        let p = EvalPoint::new()
            .with(Var::Z, c2(0.9, 0.4)).unwrap()
            .with(Var::S, c2(1.1, -0.2)).unwrap()
            .with(Var::V, c2(0.5, 0.0)).unwrap();
        assert!(identity_residual(IdentityId::Sqrt, &p, nome, &Default::default()).is_err());
    }

    #[test]
    fn id4_needs_inverse_half_nome_in_last_factor() {
        let nome = Nome::new(c2(0.3, 0.25)).unwrap();
        let pol = TruncationPolicy::default();
        let b = c2(0.8, 0.9);
        let u = nome.u();
        let t = |w| theta(w, nome, &pol).unwrap();
        let one = c2(1.0, 0.0);
        let lhs = 2.0 * kappa(u / b, u * b, nome, &pol).unwrap();
        let misprinted = t(b / u) + t(one) * t(b) / t(-b) * t(-u * b);
        let corrected = t(b / u) + t(one) * t(b) / t(-b) * t(-b / u);
        assert!((lhs - corrected).norm() < 1e-12 * lhs.norm().max(1.0));
        assert!((lhs - misprinted).norm() > 1e-3);
    }

    #[test]
    fn worst_prefers_larger_residual() {
        let a = ResidualReport::new("X", EvalPoint::new(), c2(0.1, 0.0), c2(1.0, 0.0), c2(1.0, 0.0));
        let b = ResidualReport::new("X", EvalPoint::new(), c2(0.1, 0.0), c2(1.0, 0.0), c2(2.0, 0.0));
        assert_eq!(a.clone().worst(b.clone()).rel_residual, 0.5);
        assert_eq!(b.worst(a).rel_residual, 0.5);
    }
}
