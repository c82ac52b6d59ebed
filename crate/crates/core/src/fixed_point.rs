//! Banach-Picard solvers for the nonlinear matrix equations built from
//! resolvent cocompositions.
//!
//! Each equation's right-hand side is a strict contraction for the Thompson
//! metric, so plain Picard iteration `X_{k+1} = phi(X_k)` converges to the
//! unique solution; the per-step distances and their ratios are part of the
//! output because the contraction rates are themselves subjects of
//! verification.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::compositions::{resolvent_cocomposition, resolvent_composition, MixtureSpec};
use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::matrix::Matrix;
use crate::sym::{spd_inverse, spd_power, SpdMatrix, SymMatrix};
use crate::thompson::distance;
use crate::geo_mean::weighted_geometric_mean;

/// Where the iteration starts.
#[derive(Debug, Clone)]
pub enum StartPoint {
    /// The identity matrix.
    Identity,
    /// The operand `B` (its weighted arithmetic mean for mixtures; requires
    /// a certifiable operand for the power equation).
    Operand,
    /// A caller-supplied strictly positive starting matrix.
    Custom(SpdMatrix),
}

/// Stopping threshold, iteration budget, and start for one Picard run.
///
/// `start: None` picks the solver's own default: the operand for the
/// geodesic equation, the identity for the power equation.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub start: Option<StartPoint>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 500,
            start: None,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter {
                what: "solver tolerance must be positive",
            });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter {
                what: "solver needs at least one iteration",
            });
        }
        Ok(())
    }
}

/// Observed history of one Picard run.
///
/// `distances[k]` is the Thompson distance `d(X_k, X_{k+1})`; `rates[k]`
/// is `distances[k+1] / distances[k]`, reported only when the denominator
/// exceeds `1e-15`. The last two iterates and the terminal residual
/// `d(X, phi(X))` are kept for post-hoc verification.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub distances: Vec<f64>,
    pub rates: Vec<Option<f64>>,
    pub converged: bool,
    pub iterations: usize,
    pub residual: Option<f64>,
    pub prev_iterate: Option<SpdMatrix>,
    pub last_iterate: Option<SpdMatrix>,
}

fn picard(
    phi: impl Fn(&SpdMatrix) -> Result<SpdMatrix>,
    start: SpdMatrix,
    cfg: &SolverConfig,
) -> Result<(SpdMatrix, SolveTrace)> {
    let mut trace = SolveTrace {
        distances: Vec::new(),
        rates: Vec::new(),
        converged: false,
        iterations: 0,
        residual: None,
        prev_iterate: None,
        last_iterate: None,
    };
    let mut current = start;
    for k in 0..cfg.max_iter {
        let next = phi(&current)?;
        let step = distance(&current, &next)?;
        trace.distances.push(step);
        if k > 0 {
            let prev = trace.distances[k - 1];
            trace.rates.push(if prev > 1e-15 {
                Some(step / prev)
            } else {
                None
            });
        }
        trace.prev_iterate = Some(current);
        trace.last_iterate = Some(next.clone());
        trace.iterations = k + 1;
        if step <= cfg.tol {
            trace.converged = true;
            let image = phi(&next)?;
            trace.residual = Some(distance(&next, &image)?);
            return Ok((next, trace));
        }
        current = next;
    }
    Err(Error::MaxIterExceeded(Box::new(trace)))
}

fn start_matrix(cfg: &SolverConfig, default: StartPoint, operand: Result<SpdMatrix>, dim: usize) -> Result<SpdMatrix> {
    let choice = cfg.start.clone().unwrap_or(default);
    match choice {
        StartPoint::Identity => Ok(SpdMatrix::identity(dim)),
        StartPoint::Operand => operand,
        StartPoint::Custom(x) => {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: (dim, dim),
                    got: (x.dim(), x.dim()),
                });
            }
            Ok(x)
        }
    }
}

fn check_square(l: &LinearMap, n: usize) -> Result<()> {
    if l.rows() != n || l.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            got: (l.rows(), l.cols()),
        });
    }
    Ok(())
}

/// Solves `X = L <>*_gamma (X #_t B)` for `t` in `(0, 1)`.
///
/// The map is `(1 - t)`-Lipschitz in the Thompson metric, hence the unique
/// solution; default start is the operand `B`.
pub fn solve_geo(
    l: &LinearMap,
    b: &SpdMatrix,
    gamma: f64,
    t: f64,
    cfg: &SolverConfig,
) -> Result<(SpdMatrix, SolveTrace)> {
    cfg.validate()?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            what: "geodesic weight t must lie strictly inside (0, 1)",
        });
    }
    let n = b.dim();
    check_square(l, n)?;
    l.require_norm_at_most_one()?;
    l.require_bounded_below()?;
    let start = start_matrix(cfg, StartPoint::Operand, Ok(b.clone()), n)?;
    picard(
        |x| {
            let pulled = weighted_geometric_mean(x, b, t)?;
            SpdMatrix::new(resolvent_cocomposition(l, &pulled, gamma)?)
        },
        start,
        cfg,
    )
}

/// Solves `X = L <>*_gamma (B' X^t B)` for `|t| < 1` and any real square
/// `B` whose congruences stay certifiable along the iterates.
///
/// The map is `|t|`-Lipschitz; default start is the identity. `t = 0`
/// makes the map constant, so the solution is reached after one
/// application.
pub fn solve_power(
    l: &LinearMap,
    b: &Matrix,
    gamma: f64,
    t: f64,
    cfg: &SolverConfig,
) -> Result<(SpdMatrix, SolveTrace)> {
    cfg.validate()?;
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            what: "power weight t must lie strictly inside (-1, 1)",
        });
    }
    if !b.is_square() {
        return Err(Error::DimensionMismatch {
            expected: (b.rows(), b.rows()),
            got: (b.rows(), b.cols()),
        });
    }
    let n = b.rows();
    check_square(l, n)?;
    l.require_norm_at_most_one()?;
    l.require_bounded_below()?;
    let operand_start = || -> Result<SpdMatrix> {
        SpdMatrix::new(SymMatrix::from_matrix(b)?)
    };
    let start = start_matrix(cfg, StartPoint::Identity, operand_start(), n)?;
    picard(
        |x| {
            let inner = congruence_power(b, x, t)?;
            SpdMatrix::new(resolvent_cocomposition(l, &inner, gamma)?)
        },
        start,
        cfg,
    )
}

/// `B' X^t B`, symmetrized and certified; a certification failure is the
/// SPD cliff of the power equation.
fn congruence_power(b: &Matrix, x: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    let xt = spd_power(x, t)?;
    let m = b.transpose().mul(xt.as_matrix())?.mul(b)?;
    let sym = SymMatrix::from_matrix(&m)?;
    SpdMatrix::new(sym).map_err(|e| match e {
        Error::NotSpd { lambda_min } => Error::DegenerateInnerOperand { lambda_min },
        other => other,
    })
}

/// Solves `X = Rcm_gamma(L_k, X #_s B_k)` over a mixture whose operands all
/// share the domain dimension.
pub fn solve_mixture_geo(
    spec: &MixtureSpec,
    gamma: f64,
    s: f64,
    cfg: &SolverConfig,
) -> Result<(SpdMatrix, SolveTrace)> {
    cfg.validate()?;
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter {
            what: "geodesic weight s must lie strictly inside (0, 1)",
        });
    }
    let n = check_mixture_square(spec)?;
    let start = start_matrix(cfg, StartPoint::Operand, mixture_arithmetic_mean(spec), n)?;
    picard(
        |x| {
            let operands: Result<Vec<SpdMatrix>> = spec
                .terms()
                .iter()
                .map(|term| weighted_geometric_mean(x, &term.operand, s))
                .collect();
            let moved = spec.with_operands(operands?)?;
            SpdMatrix::new(crate::compositions::resolvent_comixture(&moved, gamma)?)
        },
        start,
        cfg,
    )
}

/// Solves `X = Rcm_gamma(L_k, B_k' X^t B_k)` for `|t| < 1`.
pub fn solve_mixture_power(
    spec: &MixtureSpec,
    gamma: f64,
    t: f64,
    cfg: &SolverConfig,
) -> Result<(SpdMatrix, SolveTrace)> {
    cfg.validate()?;
    if !(t > -1.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            what: "power weight t must lie strictly inside (-1, 1)",
        });
    }
    let n = check_mixture_square(spec)?;
    let start = start_matrix(cfg, StartPoint::Identity, mixture_arithmetic_mean(spec), n)?;
    picard(
        |x| {
            let operands: Result<Vec<SpdMatrix>> = spec
                .terms()
                .iter()
                .map(|term| congruence_power(term.operand.as_matrix(), x, t))
                .collect();
            let moved = spec.with_operands(operands?)?;
            SpdMatrix::new(crate::compositions::resolvent_comixture(&moved, gamma)?)
        },
        start,
        cfg,
    )
}

fn check_mixture_square(spec: &MixtureSpec) -> Result<usize> {
    let n = spec.domain_dim();
    for term in spec.terms() {
        if term.operand.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                got: (term.operand.dim(), term.operand.dim()),
            });
        }
    }
    if !spec.some_bounded_below() {
        let sigma = spec
            .terms()
            .iter()
            .map(|t| t.map.sigma_min())
            .fold(0.0, f64::max);
        return Err(Error::NotBoundedBelow { sigma_min: sigma });
    }
    Ok(n)
}

/// Weighted arithmetic mean of the mixture operands, the operand-start
/// anchor for mixture solves.
fn mixture_arithmetic_mean(spec: &MixtureSpec) -> Result<SpdMatrix> {
    let n = spec.domain_dim();
    let mut sum = SymMatrix::zeros(n);
    for term in spec.terms() {
        sum = sum.add(&term.operand.base().scale(term.weight))?;
    }
    SpdMatrix::new(sum)
}

/// Checks the inverse-dual characterization of a geodesic solution:
/// `X^-1` must satisfy `Y = L <>_{1/gamma} (Y #_t B^-1)` within `100 * tol`
/// in Thompson distance.
pub fn verify_duality(
    x: &SpdMatrix,
    l: &LinearMap,
    b: &SpdMatrix,
    gamma: f64,
    t: f64,
    tol: f64,
) -> Result<bool> {
    let x_inv = spd_inverse(x)?;
    let b_inv = spd_inverse(b)?;
    let pulled = weighted_geometric_mean(&x_inv, &b_inv, t)?;
    let dual_image = resolvent_composition(l, &pulled, 1.0 / gamma)?;
    Ok(distance(&x_inv, &dual_image)? <= 100.0 * tol)
}
