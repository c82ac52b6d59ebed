//! Error type shared by every operation in the crate.

use alloc::boxed::Box;
use core::fmt;

use crate::fixed_point::SolveTrace;

/// Errors raised by constructors, compositions, and solvers.
#[derive(Debug, Clone)]
pub enum Error {
    /// Operand dimensions are incompatible.
    DimensionMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// Entry buffer length does not match the declared dimensions.
    InvalidData { expected: usize, got: usize },
    /// A matrix offered as strictly positive definite failed certification,
    /// or a Cholesky pivot collapsed on a certified operand.
    NotSpd { lambda_min: f64 },
    /// The Jacobi eigensolver hit its sweep cap without reducing the
    /// off-diagonal mass below threshold.
    EigenDidNotConverge { sweeps: usize },
    /// The linear map is not bounded below: its smallest singular value sits
    /// under the invertibility cliff, so the requested composition would
    /// invert a singular operator.
    NotBoundedBelow { sigma_min: f64 },
    /// The linear map has operator norm above one, violating the hypothesis
    /// of the resolvent compositions.
    NormExceedsOne { sigma_max: f64 },
    /// The linear map is not an isometry (required by the interpolation).
    NotIsometry { defect: f64 },
    /// The interpolation parameter gamma must be nonzero.
    ZeroGamma,
    /// Mixture or average weights are not positive or do not sum to one.
    InvalidWeights { sum: f64 },
    /// A scalar parameter is outside its admissible range.
    InvalidParameter { what: &'static str },
    /// The inner operand of the power fixed-point map lost strict positive
    /// definiteness along the iteration.
    DegenerateInnerOperand { lambda_min: f64 },
    /// The Picard iteration exhausted its budget; the trace preserves what
    /// was observed.
    MaxIterExceeded(Box<SolveTrace>),
}

impl Error {
    /// Stable variant name, used on the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidData { .. } => "InvalidData",
            Error::NotSpd { .. } => "NotSpd",
            Error::EigenDidNotConverge { .. } => "EigenDidNotConverge",
            Error::NotBoundedBelow { .. } => "NotBoundedBelow",
            Error::NormExceedsOne { .. } => "NormExceedsOne",
            Error::NotIsometry { .. } => "NotIsometry",
            Error::ZeroGamma => "ZeroGamma",
            Error::InvalidWeights { .. } => "InvalidWeights",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::DegenerateInnerOperand { .. } => "DegenerateInnerOperand",
            Error::MaxIterExceeded(_) => "MaxIterExceeded",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => write!(
                f,
                "DimensionMismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::InvalidData { expected, got } => write!(
                f,
                "InvalidData: expected {expected} entries, got {got}"
            ),
            Error::NotSpd { lambda_min } => write!(
                f,
                "NotSpd: smallest eigenvalue {lambda_min:e} is below the certification threshold"
            ),
            Error::EigenDidNotConverge { sweeps } => write!(
                f,
                "EigenDidNotConverge: off-diagonal mass still above threshold after {sweeps} sweeps"
            ),
            Error::NotBoundedBelow { sigma_min } => write!(
                f,
                "NotBoundedBelow: smallest singular value {sigma_min:e} is under the invertibility cliff"
            ),
            Error::NormExceedsOne { sigma_max } => write!(
                f,
                "NormExceedsOne: operator norm {sigma_max} exceeds one"
            ),
            Error::NotIsometry { defect } => write!(
                f,
                "NotIsometry: ||L'L - I||_F = {defect:e} exceeds the isometry tolerance"
            ),
            Error::ZeroGamma => write!(f, "ZeroGamma: interpolation parameter must be nonzero"),
            Error::InvalidWeights { sum } => write!(
                f,
                "InvalidWeights: weights must be positive and sum to one (sum = {sum})"
            ),
            Error::InvalidParameter { what } => write!(f, "InvalidParameter: {what}"),
            Error::DegenerateInnerOperand { lambda_min } => write!(
                f,
                "DegenerateInnerOperand: inner operand eigenvalue {lambda_min:e} fell below the SPD cliff"
            ),
            Error::MaxIterExceeded(trace) => write!(
                f,
                "MaxIterExceeded: no convergence after {} iterations (last step {:e})",
                trace.iterations,
                trace.distances.last().copied().unwrap_or(f64::NAN)
            ),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
