//! Symmetric and strictly positive definite matrices.
//!
//! `SymMatrix` keeps symmetry exact: construction averages `(M + M') / 2`
//! and writes the same value to both mirror entries, so `get(i, j) ==
//! get(j, i)` holds bitwise forever after. `SpdMatrix` is a `SymMatrix`
//! whose strict positive definiteness has been certified, carrying its
//! eigenvalue bounds.

use alloc::vec::Vec;

use crate::cholesky;
use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Certification cliff: construction requires
/// `lambda_min > SPD_CERT_REL * max(1, lambda_max)`.
///
/// This separates genuinely strictly positive inputs from numerically
/// singular ones.
pub const SPD_CERT_REL: f64 = 1e-12;

/// A real symmetric matrix with exact entrywise symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    m: Matrix,
}

impl SymMatrix {
    /// Builds from row-major entries of a square matrix, symmetrizing via
    /// `(M + M') / 2`.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        Self::from_matrix(&Matrix::new(dim, dim, entries)?)
    }

    /// Symmetrizes a square matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (m.rows(), m.rows()),
                got: (m.rows(), m.cols()),
            });
        }
        let n = m.rows();
        let mut out = m.clone();
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (m.get(i, j) + m.get(j, i));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        Ok(Self { m: out })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: Matrix::identity(dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: Matrix::zeros(dim, dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        Self { m }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn add(&self, rhs: &SymMatrix) -> Result<SymMatrix> {
        Ok(SymMatrix {
            m: self.m.add(&rhs.m)?,
        })
    }

    pub fn sub(&self, rhs: &SymMatrix) -> Result<SymMatrix> {
        Ok(SymMatrix {
            m: self.m.sub(&rhs.m)?,
        })
    }

    pub fn scale(&self, k: f64) -> SymMatrix {
        SymMatrix { m: self.m.scale(k) }
    }

    /// `self + k * I`.
    pub fn add_scaled_identity(&self, k: f64) -> SymMatrix {
        SymMatrix {
            m: self
                .m
                .add_scaled_identity(k)
                .expect("SymMatrix is square"),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }
}

/// A symmetric matrix certified strictly positive definite, with cached
/// spectral bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    base: SymMatrix,
    lambda_min: f64,
    lambda_max: f64,
}

impl SpdMatrix {
    /// Certifies `base` by eigendecomposition.
    pub fn new(base: SymMatrix) -> Result<Self> {
        let spectrum = sym_eigen(&base)?;
        let lambda_min = spectrum.lambda_min();
        let lambda_max = spectrum.lambda_max();
        if lambda_min <= SPD_CERT_REL * lambda_max.max(1.0) {
            return Err(Error::NotSpd { lambda_min });
        }
        Ok(Self {
            base,
            lambda_min,
            lambda_max,
        })
    }

    /// Constructs from bounds the caller already knows exactly (spectral
    /// shifts, powers, block concatenation). The bounds must describe the
    /// spectrum of `base` to eigensolver accuracy.
    pub(crate) fn from_parts(base: SymMatrix, lambda_min: f64, lambda_max: f64) -> Self {
        debug_assert!(lambda_min > 0.0 && lambda_min <= lambda_max);
        Self {
            base,
            lambda_min,
            lambda_max,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            base: SymMatrix::identity(dim),
            lambda_min: 1.0,
            lambda_max: 1.0,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &SymMatrix {
        &self.base
    }

    pub fn as_matrix(&self) -> &Matrix {
        self.base.as_matrix()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Condition number `lambda_max / lambda_min`.
    pub fn cond(&self) -> f64 {
        self.lambda_max / self.lambda_min
    }

    /// `self + c * I` for `c >= 0`; the spectrum shifts exactly.
    pub fn shift(&self, c: f64) -> SpdMatrix {
        debug_assert!(c >= 0.0);
        SpdMatrix {
            base: self.base.add_scaled_identity(c),
            lambda_min: self.lambda_min + c,
            lambda_max: self.lambda_max + c,
        }
    }
}

/// Spectral calculus `A^t = Q diag(lambda_i^t) Q'` for SPD `A` and any real `t`.
pub fn spd_power(a: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    let spectrum = sym_eigen(a.base())?;
    let powered = spectrum.assemble(|lambda| libm::pow(lambda, t));
    let base = SymMatrix::from_matrix(&powered)?;
    let lo = libm::pow(spectrum.lambda_min(), t);
    let hi = libm::pow(spectrum.lambda_max(), t);
    Ok(SpdMatrix::from_parts(base, lo.min(hi), lo.max(hi)))
}

/// Cholesky-backed inverse of an SPD matrix, symmetrized.
pub fn spd_inverse(a: &SpdMatrix) -> Result<SpdMatrix> {
    let inv = cholesky::inverse(a.base())?;
    Ok(SpdMatrix::from_parts(
        inv,
        1.0 / a.lambda_max(),
        1.0 / a.lambda_min(),
    ))
}

/// Loewner order test: `A` precedes `B` when
/// `lambda_min(B - A) >= -tol * max(1, ||A||, ||B||)`.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (a.dim(), a.dim()),
            got: (b.dim(), b.dim()),
        });
    }
    let diff = b.sub(a)?;
    let lambda_min = sym_eigen(&diff)?.lambda_min();
    let scale = operator_norm(a)?.max(operator_norm(b)?).max(1.0);
    Ok(lambda_min >= -tol * scale)
}

/// Spectral norm of a symmetric matrix: `max |lambda_i|`.
pub fn operator_norm(a: &SymMatrix) -> Result<f64> {
    let spectrum = sym_eigen(a)?;
    Ok(spectrum.lambda_min().abs().max(spectrum.lambda_max().abs()))
}

/// Quadratic kernel value `(1/2) <x, A x>`.
pub fn quadratic_form(a: &SymMatrix, x: &[f64]) -> Result<f64> {
    let ax = a.as_matrix().mul_vec(x)?;
    let mut acc = 0.0;
    for (xi, axi) in x.iter().zip(&ax) {
        acc += xi * axi;
    }
    Ok(0.5 * acc)
}

/// Trace pairing `<A, B> = tr(A B)` of two symmetric matrices.
pub fn trace_pairing(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (a.dim(), a.dim()),
            got: (b.dim(), b.dim()),
        });
    }
    let mut acc = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            acc += a.get(i, j) * b.get(j, i);
        }
    }
    Ok(acc)
}

/// Block-diagonal concatenation of SPD matrices; the spectrum is the union
/// of the block spectra, so the bounds carry over exactly.
pub fn block_diag(blocks: &[&SpdMatrix]) -> Result<SpdMatrix> {
    if blocks.is_empty() {
        return Err(Error::InvalidParameter {
            what: "block_diag needs at least one block",
        });
    }
    let total: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut m = Matrix::zeros(total, total);
    let mut offset = 0;
    let mut lambda_min = f64::INFINITY;
    let mut lambda_max = f64::NEG_INFINITY;
    for b in blocks {
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                m.set(offset + i, offset + j, b.get(i, j));
            }
        }
        lambda_min = lambda_min.min(b.lambda_min());
        lambda_max = lambda_max.max(b.lambda_max());
        offset += b.dim();
    }
    Ok(SpdMatrix::from_parts(
        SymMatrix { m },
        lambda_min,
        lambda_max,
    ))
}
