//! Symmetric eigendecomposition by cyclic Jacobi rotations.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::sym::SymMatrix;

/// Off-diagonal Frobenius threshold, relative to the Frobenius norm of the
/// input.
const OFF_DIAGONAL_REL: f64 = 1e-14;

/// Sweep cap; exceeding it signals pathological input.
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are sorted ascending; the columns of `eigenvectors` are the
/// matching orthonormal eigenvectors, so `Q * diag(eigenvalues) * Q'`
/// reconstructs the input.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Reassembles `Q * diag(f(lambda_i)) * Q'` as a plain matrix.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.eigenvalues.len();
        let q = &self.eigenvectors;
        let mut out = Matrix::zeros(n, n);
        for k in 0..n {
            let w = f(self.eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let qik = q.get(i, k);
                if qik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.set(i, j, out.get(i, j) + w * qik * q.get(j, k));
                }
            }
        }
        out
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Cyclic Jacobi on a working copy: each rotation annihilates one
/// off-diagonal entry, sweeps repeat until the off-diagonal Frobenius mass
/// drops below `1e-14 * ||M||_F`.
pub fn sym_eigen(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut q = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_REL * a.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenDidNotConverge { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for r in p + 1..n {
                rotate(&mut a, &mut q, p, r);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i), i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("eigenvalues are finite"));

    let eigenvalues: Vec<f64> = pairs.iter().map(|&(v, _)| v).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &(_, src)) in pairs.iter().enumerate() {
        for i in 0..n {
            eigenvectors.set(i, dst, q.get(i, src));
        }
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = a.get(i, j);
                acc += v * v;
            }
        }
    }
    libm::sqrt(acc)
}

/// One Jacobi rotation annihilating `a[p][r]`, accumulated into `q`.
fn rotate(a: &mut Matrix, q: &mut Matrix, p: usize, r: usize) {
    let apr = a.get(p, r);
    if apr == 0.0 {
        return;
    }
    let app = a.get(p, p);
    let arr = a.get(r, r);
    let theta = (arr - app) / (2.0 * apr);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(1.0 + theta * theta))
    } else {
        -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    let n = a.rows();
    for k in 0..n {
        if k == p || k == r {
            continue;
        }
        let akp = a.get(k, p);
        let akr = a.get(k, r);
        let new_p = c * akp - s * akr;
        let new_r = s * akp + c * akr;
        a.set(k, p, new_p);
        a.set(p, k, new_p);
        a.set(k, r, new_r);
        a.set(r, k, new_r);
    }
    a.set(p, p, app - t * apr);
    a.set(r, r, arr + t * apr);
    a.set(p, r, 0.0);
    a.set(r, p, 0.0);

    for k in 0..n {
        let qkp = q.get(k, p);
        let qkr = q.get(k, r);
        q.set(k, p, c * qkp - s * qkr);
        q.set(k, r, s * qkp + c * qkr);
    }
}
