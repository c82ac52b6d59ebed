//! Weighted geometric means and the geometric interpolation between the
//! composite and the parallel composition.

use crate::compositions::{composite, parallel_composition};
use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::sym::{spd_inverse, spd_power, SpdMatrix};

/// Isometry tolerance on `||L'L - I||_F`; random orthonormal factors carry
/// roundoff, exact isometry is a measure-zero target.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// Weighted geometric mean
/// `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` for `t` in `[0, 1]`.
pub fn weighted_geometric_mean(a: &SpdMatrix, b: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (a.dim(), a.dim()),
            got: (b.dim(), b.dim()),
        });
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter {
            what: "geometric mean weight t must lie in [0, 1]",
        });
    }
    let a_half = spd_power(a, 0.5)?;
    let a_inv_half = spd_power(a, -0.5)?;
    let inner = a_inv_half
        .as_matrix()
        .mul(b.as_matrix())?
        .mul(a_inv_half.as_matrix())?;
    let inner = SpdMatrix::new(crate::sym::SymMatrix::from_matrix(&inner)?)?;
    let powered = spd_power(&inner, t)?;
    let out = a_half
        .as_matrix()
        .mul(powered.as_matrix())?
        .mul(a_half.as_matrix())?;
    SpdMatrix::new(crate::sym::SymMatrix::from_matrix(&out)?)
}

/// Midpoint geometric mean `A # B`.
pub fn geometric_mean(a: &SpdMatrix, b: &SpdMatrix) -> Result<SpdMatrix> {
    weighted_geometric_mean(a, b, 0.5)
}

/// Geometric interpolation between the parallel composition and the
/// composite of an isometry `L` with `B`.
///
/// For `gamma > 0` this is
/// `(L'(B + gamma I)L) # (L*>(B + gamma I)) - gamma I`;
/// negative parameters route through the inverse operand:
/// the value at `-gamma` is the inverse of the value at `gamma` on `B^-1`.
pub fn ah_interpolation(l: &LinearMap, b: &SpdMatrix, gamma: f64) -> Result<SpdMatrix> {
    if gamma == 0.0 {
        return Err(Error::ZeroGamma);
    }
    if !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            what: "interpolation parameter must be finite",
        });
    }
    if l.rows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: (l.rows(), l.rows()),
            got: (b.dim(), b.dim()),
        });
    }
    l.require_isometry(ISOMETRY_TOL)?;

    if gamma < 0.0 {
        let inner = ah_interpolation(l, &spd_inverse(b)?, -gamma)?;
        return spd_inverse(&inner);
    }

    let shifted = b.shift(gamma);
    let arithmetic_side = SpdMatrix::new(composite(l, &shifted)?)?;
    let harmonic_side = parallel_composition(l, &shifted)?;
    let mean = geometric_mean(&arithmetic_side, &harmonic_side)?;
    SpdMatrix::new(mean.base().add_scaled_identity(-gamma))
}
