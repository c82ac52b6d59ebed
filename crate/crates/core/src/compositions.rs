//! Composite operations on strictly positive operators.
//!
//! The pieces assembled here: the composite `L' B L`, the parallel
//! composition `(L' B^-1 L)^-1`, the resolvent composition
//! `L*>(B + (1/gamma) I) - (1/gamma) I` and its cocomposition
//! `L' (B^-1 + gamma Psi)^-1 L` with `Psi = I - L L'`, the resolvent
//! average over a family of operands, the mixture forms over a stacked
//! block operator, and the variational objective whose unique minimizer is
//! the resolvent composition.

use alloc::vec::Vec;

use crate::cholesky;
use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::matrix::Matrix;
use crate::sym::{block_diag, spd_inverse, SpdMatrix, SymMatrix};

/// Largest stacked codomain dimension for which the mixture forms
/// materialize the block operator; beyond it they use the per-block sum.
const STACKED_DIM_LIMIT: usize = 256;

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            what: "gamma must be positive and finite",
        });
    }
    Ok(())
}

fn check_operand_dims(l: &LinearMap, b_dim: usize) -> Result<()> {
    if l.rows() != b_dim {
        return Err(Error::DimensionMismatch {
            expected: (l.rows(), l.rows()),
            got: (b_dim, b_dim),
        });
    }
    Ok(())
}

/// Composite `L' B L`, symmetrized.
///
/// Positive semidefinite for any `L`; strictly positive definite when `L`
/// is bounded below.
pub fn composite(l: &LinearMap, b: &SpdMatrix) -> Result<SymMatrix> {
    check_operand_dims(l, b.dim())?;
    let bl = b.as_matrix().mul(l.matrix())?;
    let ltbl = l.matrix().transpose().mul(&bl)?;
    SymMatrix::from_matrix(&ltbl)
}

/// Parallel composition `(L' B^-1 L)^-1`.
///
/// The inner operator is formed by a Cholesky solve against the columns of
/// `L`, certified, and inverted through Cholesky again.
pub fn parallel_composition(l: &LinearMap, b: &SpdMatrix) -> Result<SpdMatrix> {
    check_operand_dims(l, b.dim())?;
    l.require_bounded_below()?;
    let factor = cholesky::factor(b.base())?;
    let w = cholesky::solve_matrix(&factor, l.matrix());
    let inner = SymMatrix::from_matrix(&l.matrix().transpose().mul(&w)?)?;
    let inner = SpdMatrix::new(inner)?;
    spd_inverse(&inner)
}

/// Resolvent composition: the parallel composition of the shifted operand,
/// pulled back by the shift.
pub fn resolvent_composition(l: &LinearMap, b: &SpdMatrix, gamma: f64) -> Result<SpdMatrix> {
    check_gamma(gamma)?;
    l.require_norm_at_most_one()?;
    l.require_bounded_below()?;
    let shifted = b.shift(1.0 / gamma);
    let parallel = parallel_composition(l, &shifted)?;
    let base = parallel.base().add_scaled_identity(-1.0 / gamma);
    SpdMatrix::new(base)
}

/// Resolvent cocomposition `L' (B^-1 + gamma Psi)^-1 L` with
/// `Psi = I - L L'`.
///
/// Positive semidefinite for any admissible `L`, strictly positive definite
/// when `L` is bounded below; inverse-dual to the resolvent composition.
pub fn resolvent_cocomposition(l: &LinearMap, b: &SpdMatrix, gamma: f64) -> Result<SymMatrix> {
    check_gamma(gamma)?;
    check_operand_dims(l, b.dim())?;
    l.require_norm_at_most_one()?;
    let llt = l.matrix().mul(&l.matrix().transpose())?;
    let psi = SymMatrix::from_matrix(&Matrix::identity(l.rows()).sub(&llt)?)?;
    let b_inv = spd_inverse(b)?;
    let shifted = b_inv.base().add(&psi.scale(gamma))?;
    // SPD by construction (B^-1 plus a positive multiple of the
    // semidefinite Psi); the factorization doubles as the certificate
    let factor = cholesky::factor(&shifted)?;
    let w = cholesky::solve_matrix(&factor, l.matrix());
    SymMatrix::from_matrix(&l.matrix().transpose().mul(&w)?)
}

fn check_weights(weights: &[f64]) -> Result<()> {
    let mut sum = 0.0;
    for &w in weights {
        if !(w > 0.0) {
            return Err(Error::InvalidWeights { sum: w });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights { sum });
    }
    Ok(())
}

/// Resolvent average
/// `(sum_k alpha_k (B_k + (1/gamma) I)^-1)^-1 - (1/gamma) I`.
///
/// Interpolates between the arithmetic average (small `gamma`) and the
/// harmonic average (large `gamma`).
pub fn resolvent_average(operands: &[SpdMatrix], weights: &[f64], gamma: f64) -> Result<SpdMatrix> {
    check_gamma(gamma)?;
    if operands.is_empty() || operands.len() != weights.len() {
        return Err(Error::InvalidParameter {
            what: "resolvent_average needs one weight per operand",
        });
    }
    check_weights(weights)?;
    let dim = operands[0].dim();
    let inv_gamma = 1.0 / gamma;
    let mut sum = SymMatrix::zeros(dim);
    for (b, &alpha) in operands.iter().zip(weights) {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: (dim, dim),
                got: (b.dim(), b.dim()),
            });
        }
        let resolvent = spd_inverse(&b.shift(inv_gamma))?;
        sum = sum.add(&resolvent.base().scale(alpha))?;
    }
    let sum = SpdMatrix::new(sum)?;
    let base = spd_inverse(&sum)?.base().add_scaled_identity(-inv_gamma);
    SpdMatrix::new(base)
}

/// One `(L_k, B_k, alpha_k)` term of a mixture.
#[derive(Debug, Clone)]
pub struct MixtureTerm {
    pub map: LinearMap,
    pub operand: SpdMatrix,
    pub weight: f64,
}

/// A weighted family of maps and operands over a common domain, the data of
/// the resolvent mixture and comixture.
#[derive(Debug, Clone)]
pub struct MixtureSpec {
    terms: Vec<MixtureTerm>,
    domain_dim: usize,
}

impl MixtureSpec {
    pub fn new(terms: Vec<MixtureTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter {
                what: "a mixture needs at least one term",
            });
        }
        let weights: Vec<f64> = terms.iter().map(|t| t.weight).collect();
        check_weights(&weights)?;
        let domain_dim = terms[0].map.cols();
        for term in &terms {
            if term.map.cols() != domain_dim {
                return Err(Error::DimensionMismatch {
                    expected: (term.map.rows(), domain_dim),
                    got: (term.map.rows(), term.map.cols()),
                });
            }
            if term.map.rows() != term.operand.dim() {
                return Err(Error::DimensionMismatch {
                    expected: (term.operand.dim(), domain_dim),
                    got: (term.map.rows(), term.map.cols()),
                });
            }
            if term.map.sigma_max() <= 0.0 {
                return Err(Error::InvalidParameter {
                    what: "mixture maps must be nonzero",
                });
            }
            term.map.require_norm_at_most_one()?;
        }
        Ok(Self { terms, domain_dim })
    }

    pub fn terms(&self) -> &[MixtureTerm] {
        &self.terms
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn total_codomain_dim(&self) -> usize {
        self.terms.iter().map(|t| t.map.rows()).sum()
    }

    pub fn all_identity(&self) -> bool {
        self.terms.iter().all(|t| t.map.is_identity())
    }

    pub fn some_bounded_below(&self) -> bool {
        self.terms.iter().any(|t| t.map.is_bounded_below())
    }

    /// The stacked operator `x -> (sqrt(alpha_k) L_k x)_k`.
    pub fn stacked_map(&self) -> Result<LinearMap> {
        let total = self.total_codomain_dim();
        let mut m = Matrix::zeros(total, self.domain_dim);
        let mut offset = 0;
        for term in &self.terms {
            let w = libm::sqrt(term.weight);
            for i in 0..term.map.rows() {
                for j in 0..self.domain_dim {
                    m.set(offset + i, j, w * term.map.matrix().get(i, j));
                }
            }
            offset += term.map.rows();
        }
        LinearMap::new(m)
    }

    /// The block-diagonal operand `diag(B_1, ..., B_p)`.
    pub fn block_operand(&self) -> Result<SpdMatrix> {
        let blocks: Vec<&SpdMatrix> = self.terms.iter().map(|t| &t.operand).collect();
        block_diag(&blocks)
    }

    /// Same maps and weights over replacement operands; dimensions are
    /// re-checked, the maps keep their certified bounds.
    pub fn with_operands(&self, operands: Vec<SpdMatrix>) -> Result<MixtureSpec> {
        if operands.len() != self.terms.len() {
            return Err(Error::InvalidParameter {
                what: "with_operands needs one operand per term",
            });
        }
        let terms: Vec<MixtureTerm> = self
            .terms
            .iter()
            .zip(operands)
            .map(|(t, operand)| MixtureTerm {
                map: t.map.clone(),
                operand,
                weight: t.weight,
            })
            .collect();
        MixtureSpec::new(terms)
    }
}

/// Resolvent mixture: the resolvent composition of the stacked map with the
/// block-diagonal operand.
///
/// Identity-map mixtures collapse onto the resolvent average exactly; small
/// stacked dimensions evaluate through the materialized block operator,
/// large ones through the per-block sum
/// `(sum_k alpha_k L_k' (B_k + (1/gamma) I)^-1 L_k)^-1 - (1/gamma) I`.
pub fn resolvent_mixture(spec: &MixtureSpec, gamma: f64) -> Result<SpdMatrix> {
    check_gamma(gamma)?;
    if !spec.some_bounded_below() {
        let sigma = spec
            .terms()
            .iter()
            .map(|t| t.map.sigma_min())
            .fold(0.0, f64::max);
        return Err(Error::NotBoundedBelow { sigma_min: sigma });
    }
    if spec.all_identity() {
        let (operands, weights) = split_terms(spec);
        return resolvent_average(&operands, &weights, gamma);
    }
    if spec.total_codomain_dim() <= STACKED_DIM_LIMIT {
        let stacked = spec.stacked_map()?;
        let block = spec.block_operand()?;
        return resolvent_composition(&stacked, &block, gamma);
    }
    let inv_gamma = 1.0 / gamma;
    let sum = per_block_congruence_sum(spec, |b| Ok(b.shift(inv_gamma)))?;
    let base = spd_inverse(&SpdMatrix::new(sum)?)?
        .base()
        .add_scaled_identity(-inv_gamma);
    SpdMatrix::new(base)
}

/// Resolvent comixture: the resolvent cocomposition of the stacked map with
/// the block-diagonal operand.
pub fn resolvent_comixture(spec: &MixtureSpec, gamma: f64) -> Result<SymMatrix> {
    check_gamma(gamma)?;
    if spec.all_identity() {
        let (operands, weights) = split_terms(spec);
        return Ok(resolvent_average(&operands, &weights, gamma)?.base().clone());
    }
    if spec.total_codomain_dim() <= STACKED_DIM_LIMIT || !spec.some_bounded_below() {
        let stacked = spec.stacked_map()?;
        let block = spec.block_operand()?;
        return resolvent_cocomposition(&stacked, &block, gamma);
    }
    // inverse-dual route: (L <>_{1/gamma} B^-1)^-1 with per-block sums
    let sum = per_block_congruence_sum(spec, |b| Ok(spd_inverse(b)?.shift(gamma)))?;
    let inner = spd_inverse(&SpdMatrix::new(sum)?)?
        .base()
        .add_scaled_identity(-gamma);
    Ok(spd_inverse(&SpdMatrix::new(inner)?)?.base().clone())
}

fn split_terms(spec: &MixtureSpec) -> (Vec<SpdMatrix>, Vec<f64>) {
    let operands = spec.terms().iter().map(|t| t.operand.clone()).collect();
    let weights = spec.terms().iter().map(|t| t.weight).collect();
    (operands, weights)
}

/// `sum_k alpha_k L_k' f(B_k)^-1 L_k`, each inverse applied by Cholesky
/// solve against the columns of `L_k`.
fn per_block_congruence_sum(
    spec: &MixtureSpec,
    f: impl Fn(&SpdMatrix) -> Result<SpdMatrix>,
) -> Result<SymMatrix> {
    let n = spec.domain_dim();
    let mut sum = SymMatrix::zeros(n);
    for term in spec.terms() {
        let shifted = f(&term.operand)?;
        let factor = cholesky::factor(shifted.base())?;
        let w = cholesky::solve_matrix(&factor, term.map.matrix());
        let t = term.map.matrix().transpose().mul(&w)?;
        sum = sum.add(&SymMatrix::from_matrix(&t)?.scale(term.weight))?;
    }
    Ok(sum)
}

/// Value and gradient of the variational objective whose unique minimizer
/// is the resolvent composition.
///
/// With `f(X) = -ln det(X + (1/gamma) I)` and the trace pairing, the value
/// is `f(X) - f(B) - <grad f(B), L X L' - B>` and the gradient is
/// `-(X + (1/gamma) I)^-1 + L' (B + (1/gamma) I)^-1 L`, which vanishes
/// exactly at the resolvent composition.
pub fn variational_objective(
    x: &SpdMatrix,
    l: &LinearMap,
    b: &SpdMatrix,
    gamma: f64,
) -> Result<(f64, SymMatrix)> {
    check_gamma(gamma)?;
    check_operand_dims(l, b.dim())?;
    if l.cols() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: (l.cols(), l.cols()),
            got: (x.dim(), x.dim()),
        });
    }
    l.require_norm_at_most_one()?;
    l.require_bounded_below()?;

    let inv_gamma = 1.0 / gamma;
    let x_shifted = x.shift(inv_gamma);
    let b_shifted = b.shift(inv_gamma);

    let f_x = -cholesky::ln_det(x_shifted.base())?;
    let f_b = -cholesky::ln_det(b_shifted.base())?;

    let grad_f_b = spd_inverse(&b_shifted)?.base().scale(-1.0);

    // pairing term <grad f(B), L X L' - B> on the codomain side
    let lxlt = l
        .matrix()
        .mul(x.as_matrix())?
        .mul(&l.matrix().transpose())?;
    let lxlt = SymMatrix::from_matrix(&lxlt)?;
    let pairing = crate::sym::trace_pairing(&grad_f_b, &lxlt.sub(b.base())?)?;

    let value = f_x - f_b - pairing;

    let x_inv = spd_inverse(&x_shifted)?;
    let pulled = composite(l, &spd_inverse(&b_shifted)?)?;
    let gradient = pulled.sub(x_inv.base())?;

    Ok((value, gradient))
}
