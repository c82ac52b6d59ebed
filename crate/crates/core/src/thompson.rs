//! The Thompson metric on the strictly positive definite cone.

use crate::error::{Error, Result};
use crate::eigen::sym_eigen;
use crate::sym::{spd_power, SpdMatrix, SymMatrix};

/// Order gain: the least `lambda > 0` with `A <= lambda B` in the Loewner
/// order, computed spectrally as `lambda_max(B^{-1/2} A B^{-1/2})`.
pub fn gain(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (a.dim(), a.dim()),
            got: (b.dim(), b.dim()),
        });
    }
    let b_inv_half = spd_power(b, -0.5)?;
    let conjugated = b_inv_half
        .as_matrix()
        .mul(a.as_matrix())?
        .mul(b_inv_half.as_matrix())?;
    let conjugated = SymMatrix::from_matrix(&conjugated)?;
    Ok(sym_eigen(&conjugated)?.lambda_max())
}

/// Thompson distance `ln max{g(A,B), g(B,A)}`.
///
/// Gains below one are clamped to one before the max: the two gains cannot
/// both sit under one, so a sub-one reading is roundoff and the clamp keeps
/// the distance nonnegative.
pub fn distance(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    let g_ab = gain(a, b)?.max(1.0);
    let g_ba = gain(b, a)?.max(1.0);
    Ok(libm::log(g_ab.max(g_ba)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{loewner_leq, SymMatrix};

    fn spd(entries: &[f64], dim: usize) -> SpdMatrix {
        SpdMatrix::new(SymMatrix::new(dim, entries.to_vec()).unwrap()).unwrap()
    }

    /// Bisection on the Loewner definition of the gain, used to validate
    /// the spectral path against the infimum form.
    fn gain_by_bisection(a: &SpdMatrix, b: &SpdMatrix) -> f64 {
        let spectral = gain(a, b).unwrap();
        let mut lo = spectral * (1.0 - 1e-6);
        let mut hi = spectral * (1.0 + 1e-6);
        for _ in 0..20 {
            let mid = 0.5 * (lo + hi);
            if loewner_leq(a.base(), &b.base().scale(mid), 0.0).unwrap() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn gain_of_scalar_multiple() {
        let id = SpdMatrix::identity(2);
        let two = spd(&[2.0, 0.0, 0.0, 2.0], 2);
        assert!((gain(&two, &id).unwrap() - 2.0).abs() < 1e-12);
        assert!((gain(&two, &two).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gain_of_commuting_diagonals() {
        // max(1/2, 4) = 4
        let a = spd(&[1.0, 0.0, 0.0, 4.0], 2);
        let b = spd(&[2.0, 0.0, 0.0, 1.0], 2);
        let g = gain(&a, &b).unwrap();
        assert!((g - 4.0).abs() < 1e-12);
        let g_bis = gain_by_bisection(&a, &b);
        assert!((g - g_bis).abs() <= 2e-6 * g);
        // the defining inequality holds just above the gain
        assert!(loewner_leq(a.base(), &b.base().scale(g + 1e-9), 0.0).unwrap());
    }

    #[test]
    fn distance_examples() {
        let id = SpdMatrix::identity(2);
        let two = spd(&[2.0, 0.0, 0.0, 2.0], 2);
        assert!(distance(&id, &id).unwrap().abs() < 1e-12);
        assert!((distance(&two, &id).unwrap() - 2.0_f64.ln()).abs() < 1e-12);

        let a = spd(&[1.0, 0.0, 0.0, 4.0], 2);
        let b = spd(&[2.0, 0.0, 0.0, 1.0], 2);
        assert!((distance(&a, &b).unwrap() - 4.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn distance_is_symmetric_and_nonnegative() {
        let a = spd(&[2.0, 1.0, 1.0, 2.0], 2);
        let b = spd(&[3.0, -0.5, -0.5, 1.0], 2);
        let d_ab = distance(&a, &b).unwrap();
        let d_ba = distance(&b, &a).unwrap();
        assert!(d_ab >= 0.0);
        assert!((d_ab - d_ba).abs() < 1e-10);
    }
}
