//! Seeded, platform-independent instance generation.
//!
//! The generator is a SplitMix64 stream; normals come from the Marsaglia
//! polar transform with `libm` transcendentals, so a fixed seed produces
//! bitwise-identical matrices on every platform.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::matrix::Matrix;
use crate::sym::{SpdMatrix, SymMatrix};

/// Deterministic SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Standard normal via the polar method.
    pub fn normal(&mut self) -> f64 {
        loop {
            let u = self.uniform(-1.0, 1.0);
            let v = self.uniform(-1.0, 1.0);
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * libm::sqrt(-2.0 * libm::log(s) / s);
            }
        }
    }
}

/// Random matrix with independent standard normal entries.
pub fn random_normal_matrix(rows: usize, cols: usize, rng: &mut SeededRng) -> Matrix {
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.normal()).collect();
    Matrix::new(rows, cols, data).expect("dimensions are positive")
}

/// Random orthogonal matrix: Gram-Schmidt on a normal matrix, run twice for
/// orthogonality at working precision.
pub fn random_orthogonal(dim: usize, rng: &mut SeededRng) -> Matrix {
    loop {
        let m = random_normal_matrix(dim, dim, rng);
        if let Some(q) = gram_schmidt(&m) {
            return q;
        }
    }
}

/// Random map with orthonormal columns (`rows >= cols`), an isometry of the
/// domain into the codomain.
pub fn random_isometry(rows: usize, cols: usize, rng: &mut SeededRng) -> Result<LinearMap> {
    if rows < cols {
        return Err(Error::InvalidParameter {
            what: "an isometry needs rows >= cols",
        });
    }
    loop {
        let m = random_normal_matrix(rows, cols, rng);
        if let Some(q) = gram_schmidt(&m) {
            return LinearMap::new(q);
        }
    }
}

/// Random bounded-below map rescaled so its operator norm is `norm`
/// (up to a hair under, keeping the unit-norm hypothesis safe).
pub fn random_contraction(
    rows: usize,
    cols: usize,
    norm: f64,
    rng: &mut SeededRng,
) -> Result<LinearMap> {
    if !(norm > 0.0) || rows < cols {
        return Err(Error::InvalidParameter {
            what: "random_contraction needs norm > 0 and rows >= cols",
        });
    }
    loop {
        let m = random_normal_matrix(rows, cols, rng);
        let l = LinearMap::new(m)?;
        if l.sigma_min() <= 1e-6 * l.sigma_max() {
            continue;
        }
        let k = norm * (1.0 - 1e-13) / l.sigma_max();
        return LinearMap::new(l.matrix().scale(k));
    }
}

/// Deterministic SPD test instance: eigenvalues log-uniform on
/// `[1/sqrt(cond_target), sqrt(cond_target)]`, conjugated by a random
/// orthogonal matrix.
pub fn random_spd(dim: usize, cond_target: f64, seed: u64) -> Result<SpdMatrix> {
    if dim < 1 {
        return Err(Error::InvalidParameter {
            what: "random_spd needs dim >= 1",
        });
    }
    if !(cond_target >= 1.0) {
        return Err(Error::InvalidParameter {
            what: "random_spd needs cond_target >= 1",
        });
    }
    let mut rng = SeededRng::new(seed);
    let half_log = 0.5 * libm::log(cond_target);
    let eigenvalues: Vec<f64> = (0..dim)
        .map(|_| libm::exp(rng.uniform(-half_log, half_log)))
        .collect();
    let q = random_orthogonal(dim, &mut rng);

    let mut scaled = q.clone();
    for i in 0..dim {
        for j in 0..dim {
            scaled.set(i, j, q.get(i, j) * eigenvalues[j]);
        }
    }
    let m = scaled.mul(&q.transpose()).expect("square");
    let base = SymMatrix::from_matrix(&m)?;

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in &eigenvalues {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok(SpdMatrix::from_parts(base, lo, hi))
}

/// Modified Gram-Schmidt with one re-orthogonalization pass; `None` when a
/// column degenerates.
fn gram_schmidt(m: &Matrix) -> Option<Matrix> {
    let rows = m.rows();
    let cols = m.cols();
    let mut q = m.clone();
    for _pass in 0..2 {
        for j in 0..cols {
            for k in 0..j {
                let mut dot = 0.0;
                for i in 0..rows {
                    dot += q.get(i, k) * q.get(i, j);
                }
                for i in 0..rows {
                    q.set(i, j, q.get(i, j) - dot * q.get(i, k));
                }
            }
            let mut norm_sq = 0.0;
            for i in 0..rows {
                norm_sq += q.get(i, j) * q.get(i, j);
            }
            let norm = libm::sqrt(norm_sq);
            if norm < 1e-8 {
                return None;
            }
            for i in 0..rows {
                q.set(i, j, q.get(i, j) / norm);
            }
        }
    }
    Some(q)
}
