use thiserror::Error;

use crate::polyring::Vars;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in SL(2,C): |det - 1| = {0:.3e}")]
    NotUnimodular(f64),

    #[error("polynomial variables differ: {0} vs {1}")]
    VarMismatch(Vars, Vars),

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("resultant needs both inputs of positive degree in z")]
    DegreeZero,

    #[error("degenerate representation parameter: {0} must be nonzero")]
    DegenerateParameter(&'static str),

    #[error("index m = {0} is excluded (m = -1 and m = 0 do not give hyperbolic links)")]
    BadIndex(i64),

    #[error("point is off the canonical component: scaled residual {residual:.3e}")]
    NotOnVariety { residual: f64 },

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("continuation jumped branches near omega = {omega:.6} (displacement {distance:.3e})")]
    BranchJump { omega: f64, distance: f64 },

    #[error("continuation step underflow near omega = {omega:.6} (step {step:.3e})")]
    StepUnderflow { omega: f64, step: f64 },

    #[error("integrand is singular at omega = {omega:.6}")]
    SingularPoint { omega: f64 },

    #[error("no admissible branch carries positive volume for alpha = {alpha:.9}")]
    NoAdmissibleBranch { alpha: f64 },

    #[error("quadrature failed to reach tolerance: error estimate {error_estimate:.3e}")]
    QuadratureFailure { error_estimate: f64 },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
