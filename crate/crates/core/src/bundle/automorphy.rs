use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{nonzero, Nome};

pub type Matrix = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

type MatrixFn = dyn Fn(Complex64) -> Result<Matrix> + Send + Sync;
type VectorFn = dyn Fn(Complex64) -> Result<Vector> + Send + Sync;

/// An `r × r` matrix function `A(z)` on `ℂ*`.
#[derive(Clone)]
pub struct FactorOfAutomorphy {
    rank: usize,
    label: String,
    eval: Arc<MatrixFn>,
}

impl fmt::Debug for FactorOfAutomorphy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorOfAutomorphy")
            .field("rank", &self.rank)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl FactorOfAutomorphy {
    pub fn new(
        rank: usize,
        label: impl Into<String>,
        eval: impl Fn(Complex64) -> Result<Matrix> + Send + Sync + 'static,
    ) -> Self {
        FactorOfAutomorphy {
            rank,
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    /// A rank-1 factor from a scalar function.
    pub fn scalar(
        label: impl Into<String>,
        f: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self::new(1, label, move |z| Ok(Matrix::from_element(1, 1, f(z)?)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: Complex64) -> Result<Matrix> {
        nonzero(z, "z")?;
        let m = (self.eval)(z)?;
        if m.nrows() != self.rank || m.ncols() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "{} returned a {}×{} matrix, expected rank {}",
                self.label,
                m.nrows(),
                m.ncols(),
                self.rank
            )));
        }
        Ok(m)
    }

    /// Multiplicator of `V(A) ⊗ V(B)`: the Kronecker product `A(z) ⊗ B(z)`.
    /// For a rank-1 factor φ this is just `φ·B`.
    pub fn tensor(&self, other: &FactorOfAutomorphy) -> FactorOfAutomorphy {
        let (a, b) = (self.clone(), other.clone());
        FactorOfAutomorphy::new(
            self.rank * other.rank,
            format!("{}⊗{}", self.label, other.label),
            move |z| Ok(a.eval(z)?.kronecker(&b.eval(z)?)),
        )
    }
}

/// A vector function `v(z)` to be tested as a section.
#[derive(Clone)]
pub struct SectionCandidate {
    rank: usize,
    label: String,
    eval: Arc<VectorFn>,
}

impl fmt::Debug for SectionCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SectionCandidate")
            .field("rank", &self.rank)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl SectionCandidate {
    pub fn new(
        rank: usize,
        label: impl Into<String>,
        eval: impl Fn(Complex64) -> Result<Vector> + Send + Sync + 'static,
    ) -> Self {
        SectionCandidate {
            rank,
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: Complex64) -> Result<Vector> {
        nonzero(z, "z")?;
        let v = (self.eval)(z)?;
        if v.len() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "{} returned {} components, expected {}",
                self.label,
                v.len(),
                self.rank
            )));
        }
        Ok(v)
    }
}

pub(crate) fn max_abs<'a>(it: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    it.into_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest relative residual of `v(qz) − A(z)v(z)` over the points, each
/// measured as `max|·| / max(|v(qz)|, |A(z)v(z)|, 1)`.
pub fn check_section(
    a: &FactorOfAutomorphy,
    v: &SectionCandidate,
    nome: Nome,
    points: &[Complex64],
) -> Result<f64> {
    if a.rank() != v.rank() {
        return Err(Error::InvalidArgument(format!(
            "rank mismatch: {} has rank {}, {} has rank {}",
            a.label(),
            a.rank(),
            v.label(),
            v.rank()
        )));
    }
    let q = nome.q();
    let mut worst = 0.0f64;
    for &z in points {
        let lhs = v.eval(q * z)?;
        let rhs = a.eval(z)? * v.eval(z)?;
        let scale = max_abs(lhs.iter()).max(max_abs(rhs.iter())).max(1.0);
        worst = worst.max(max_abs((lhs - rhs).iter()) / scale);
    }
    Ok(worst)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `L = V₁(u^{−1}z^{−1})`; θ is its section.
pub fn make_l(nome: Nome) -> FactorOfAutomorphy {
    let u = nome.u();
    FactorOfAutomorphy::scalar("L", move |z| Ok((u * z).inv()))
}

/// `P_a = V₁(a)`, `a` a constant.
pub fn make_pa(a: Complex64) -> Result<FactorOfAutomorphy> {
    nonzero(a, "a")?;
    Ok(FactorOfAutomorphy::scalar(format!("P[{a}]"), move |_| Ok(a)))
}

/// `F_a = V₂([[a, 1], [0, u^{−1}z^{−1}]])`; `(κ_a, θ)` is its section.
pub fn make_fa(a: Complex64, nome: Nome) -> Result<FactorOfAutomorphy> {
    nonzero(a, "a")?;
    let u = nome.u();
    Ok(FactorOfAutomorphy::new(2, format!("F[{a}]"), move |z| {
        Ok(Matrix::from_row_slice(2, 2, &[a, c(1.0), c(0.0), (u * z).inv()]))
    }))
}

/// `F'_a = V₂([[1, 1], [0, u^{−1}az^{−1}]])`.
pub fn make_fpa(a: Complex64, nome: Nome) -> Result<FactorOfAutomorphy> {
    nonzero(a, "a")?;
    let u = nome.u();
    Ok(FactorOfAutomorphy::new(2, format!("F'[{a}]"), move |z| {
        Ok(Matrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), a / (u * z)]))
    }))
}

/// The push-forward `π_*L' = V₂([[0, −u^{−1}z^{−1}], [1, 0]])` from the double
/// cover.
pub fn make_push(nome: Nome) -> FactorOfAutomorphy {
    let u = nome.u();
    FactorOfAutomorphy::new(2, "π*L'", move |z| {
        Ok(Matrix::from_row_slice(2, 2, &[c(0.0), -(u * z).inv(), c(1.0), c(0.0)]))
    })
}
