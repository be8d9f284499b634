use thiserror::Error;

/// Errors raised by the geometry routines.
///
/// Domain errors are precondition violations of a single call. The solver
/// variants carry enough of the iteration state to diagnose a failed run.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate lattice: determinant {det:e} below tolerance {tol:e}")]
    DegenerateLattice { det: f64, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("coefficient matrix not positive definite at ({x1}, {x2}, {x3}): smallest eigenvalue {eig:e}")]
    NotPositiveDefinite { x1: f64, x2: f64, x3: f64, eig: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("graph value {value} at node ({i}, {j}) outside metric interval [{lo}, {hi}]")]
    OutOfRange {
        i: usize,
        j: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("solver did not converge after {iterations} iterations (last max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("singular Jacobian: {0}")]
    SingularJacobian(String),

    #[error("inconsistent gluing: {0}")]
    Gluing(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
