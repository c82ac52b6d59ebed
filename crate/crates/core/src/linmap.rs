//! Bounded linear maps between the two spaces of a composition.
//!
//! A `LinearMap` is a dense `rows x cols` matrix -- the operator `L` taking
//! the domain space (dimension `cols`) into the codomain (dimension `rows`)
//! -- together with certified singular-value bounds computed from the Gram
//! matrix `L'L`.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::sym::SymMatrix;

/// Bounded-below cliff: operations that invert through `L` require
/// `sigma_min > BOUNDED_BELOW_REL * max(1, sigma_max)`.
pub const BOUNDED_BELOW_REL: f64 = 1e-10;

/// Slack accepted on the unit-norm hypothesis of the resolvent compositions.
pub const NORM_ONE_SLACK: f64 = 1e-12;

/// A dense linear map with cached extreme singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    m: Matrix,
    sigma_max: f64,
    sigma_min: f64,
}

impl LinearMap {
    /// Wraps a matrix, computing its singular-value bounds from `L'L`.
    pub fn new(m: Matrix) -> Result<Self> {
        let gram = SymMatrix::from_matrix(&m.transpose().mul(&m)?)?;
        let spectrum = sym_eigen(&gram)?;
        let sigma_min = libm::sqrt(spectrum.lambda_min().max(0.0));
        let sigma_max = libm::sqrt(spectrum.lambda_max().max(0.0));
        Ok(Self {
            m,
            sigma_max,
            sigma_min,
        })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: Matrix::identity(n),
            sigma_max: 1.0,
            sigma_min: 1.0,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.m.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    /// Whether `L` is injective with a safe margin: `sigma_min` above the
    /// cliff relative to `max(1, sigma_max)`.
    pub fn is_bounded_below(&self) -> bool {
        self.sigma_min > BOUNDED_BELOW_REL * self.sigma_max.max(1.0)
    }

    /// `||L'L - I||_F`; zero for an exact isometry.
    pub fn isometry_defect(&self) -> f64 {
        let gram = self
            .m
            .transpose()
            .mul(&self.m)
            .expect("dimensions agree by construction");
        gram.sub(&Matrix::identity(self.cols()))
            .expect("gram is square")
            .frobenius_norm()
    }

    /// Exact identity test (bitwise), used to collapse mixtures onto the
    /// resolvent average.
    pub fn is_identity(&self) -> bool {
        if self.rows() != self.cols() {
            return false;
        }
        let n = self.rows();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                if self.m.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn require_norm_at_most_one(&self) -> Result<()> {
        if self.sigma_max > 1.0 + NORM_ONE_SLACK {
            return Err(Error::NormExceedsOne {
                sigma_max: self.sigma_max,
            });
        }
        Ok(())
    }

    pub(crate) fn require_bounded_below(&self) -> Result<()> {
        if !self.is_bounded_below() {
            return Err(Error::NotBoundedBelow {
                sigma_min: self.sigma_min,
            });
        }
        Ok(())
    }

    pub(crate) fn require_isometry(&self, tol: f64) -> Result<()> {
        let defect = self.isometry_defect();
        if defect > tol {
            return Err(Error::NotIsometry { defect });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal_map() {
        let l = LinearMap::from_rows(&[&[0.6, 0.0], &[0.0, 0.3]]).unwrap();
        assert!((l.sigma_max() - 0.6).abs() < 1e-12);
        assert!((l.sigma_min() - 0.3).abs() < 1e-12);
        assert!(l.is_bounded_below());
    }

    #[test]
    fn tall_injection_is_isometry() {
        let l = LinearMap::from_rows(&[&[1.0], &[0.0]]).unwrap();
        assert_eq!(l.sigma_max(), 1.0);
        assert_eq!(l.sigma_min(), 1.0);
        assert!(l.isometry_defect() < 1e-15);
    }

    #[test]
    fn wide_map_is_not_bounded_below() {
        // 1x2 map has a kernel
        let l = LinearMap::from_rows(&[&[1.0, 1.0]]).unwrap();
        assert_eq!(l.sigma_min(), 0.0);
        assert!(!l.is_bounded_below());
    }

    #[test]
    fn identity_detection_is_exact() {
        assert!(LinearMap::identity(3).is_identity());
        let l = LinearMap::from_rows(&[&[1.0, 0.0], &[0.0, 1.0 + 1e-16]]).unwrap();
        assert!(l.is_identity()); // 1 + 1e-16 rounds to 1.0 in f64
        let l = LinearMap::from_rows(&[&[1.0, 0.0], &[0.0, 0.999]]).unwrap();
        assert!(!l.is_identity());
    }
}
