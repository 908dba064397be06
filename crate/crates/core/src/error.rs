use thiserror::Error;

use crate::interval::{Interval, IntervalError};
use crate::linalg::IVector4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Interval(#[from] IntervalError),

    #[error("exact constant identity failed: {0}")]
    ExactIdentity(&'static str),

    #[error("matrix is numerically singular (pivot breakdown in column {column})")]
    SingularMatrix { column: usize },

    #[error("singular Jacobian at Newton iteration {iteration}")]
    SingularJacobian { iteration: usize },

    #[error("Newton did not converge in {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("radii polynomial has no verified negative value in (0, {r_star:e}] (Y0 = {y0:e}, Z2 = {z2:e})")]
    NoNegativityWindow { y0: f64, z2: f64, r_star: f64 },

    #[error("half period not certified positive: L enclosure {0:?}")]
    NonPositivePeriod(Interval),

    #[error("positivity check failed at mesh cell {cell} over t in {time:?}: {reason}")]
    PositivityFailed {
        cell: usize,
        time: Interval,
        state: Box<IVector4>,
        reason: &'static str,
    },

    #[error("mesh size {0} is too small (need at least 3 cells)")]
    MeshTooSmall(usize),

    #[error("non-transversal crossing: a2 enclosure {0:?} contains zero")]
    NonTransversal(Interval),

    #[error("approximate eigendecomposition has complex eigenvalues")]
    ComplexEigenvalues,

    #[error("eigenbasis not certifiable: ||I - W V|| bound {beta:e} >= 1")]
    EigenbasisNotCertifiable { beta: f64 },
}
