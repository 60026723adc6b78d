use thiserror::Error;

pub type Result<T> = std::result::Result<T, BlochError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlochError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("unphysical Bloch vector: |R| = {norm} exceeds 1 + {eps:e}")]
    Unphysical { norm: f64, eps: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("closed-form solution requires zero detuning (got delta = {0})")]
    OffResonance(f64),

    #[error("negative time t = {0}")]
    NegativeTime(f64),

    #[error(
        "integrator did not converge: step refinement changed the trajectory by {max_diff:e} \
         (tolerance {tolerance:e})"
    )]
    NonConvergence { max_diff: f64, tolerance: f64 },

    #[error("singular linear system")]
    Singular,

    #[error("axis bounds: {0}")]
    AxisBounds(String),

    #[error("empty series")]
    EmptySeries,

    #[error("quantization bounds: {0}")]
    Bounds(String),
}
