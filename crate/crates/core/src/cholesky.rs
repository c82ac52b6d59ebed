//! Cholesky factorization and the solves built on it.
//!
//! Every inverse of a certified SPD operand in this crate routes through
//! here; explicit adjugates never appear outside 2x2 test oracles.

use alloc::vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::sym::SymMatrix;

/// Lower-triangular Cholesky factor `L` with `A = L * L'`.
///
/// A nonpositive pivot means the operand is not strictly positive definite;
/// on a certified operand that indicates a certification bug upstream.
pub(crate) fn factor(a: &SymMatrix) -> Result<Matrix> {
    let n = a.dim();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = a.get(i, j);
            for k in 0..j {
                acc -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(Error::NotSpd { lambda_min: acc });
                }
                l.set(i, i, libm::sqrt(acc));
            } else {
                l.set(i, j, acc / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Solves `A X = RHS` column by column given the factor `L` of `A`.
pub(crate) fn solve_matrix(l: &Matrix, rhs: &Matrix) -> Matrix {
    let n = l.rows();
    let mut out = Matrix::zeros(n, rhs.cols());
    let mut y = vec![0.0; n];
    let mut x = vec![0.0; n];
    for col in 0..rhs.cols() {
        // forward: L y = rhs[:, col]
        for i in 0..n {
            let mut acc = rhs.get(i, col);
            for k in 0..i {
                acc -= l.get(i, k) * y[k];
            }
            y[i] = acc / l.get(i, i);
        }
        // backward: L' x = y
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in i + 1..n {
                acc -= l.get(k, i) * x[k];
            }
            x[i] = acc / l.get(i, i);
        }
        for i in 0..n {
            out.set(i, col, x[i]);
        }
    }
    out
}

/// Inverse of a symmetric positive definite matrix, symmetrized.
pub(crate) fn inverse(a: &SymMatrix) -> Result<SymMatrix> {
    let l = factor(a)?;
    let inv = solve_matrix(&l, &Matrix::identity(a.dim()));
    SymMatrix::from_matrix(&inv)
}

/// `ln det A` through the factor diagonal.
pub(crate) fn ln_det(a: &SymMatrix) -> Result<f64> {
    let l = factor(a)?;
    let mut acc = 0.0;
    for i in 0..a.dim() {
        acc += libm::log(l.get(i, i));
    }
    Ok(2.0 * acc)
}
