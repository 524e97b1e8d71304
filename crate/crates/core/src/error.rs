use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("point ({x}, {y}) lies outside the domain of {what}")]
    Domain { what: &'static str, x: f64, y: f64 },

    #[error("singular argument: {0}")]
    Singularity(String),

    #[error("stencil of half-width {step} around ({x}, {y}) leaves the evaluation region")]
    Stencil { x: f64, y: f64, step: f64 },

    #[error("undersampled trace: {samples} samples cannot resolve {modes} modes (need at least {needed})")]
    Undersampling {
        samples: usize,
        modes: usize,
        needed: usize,
    },

    #[error("trace window too small: truncation tail bound {tail:e} exceeds tolerance {tol:e}")]
    WindowTooSmall { tail: f64, tol: f64 },

    #[error("series did not reach tolerance {tol:e} within {terms} terms (achieved tail bound {achieved:e})")]
    Convergence {
        terms: usize,
        achieved: f64,
        tol: f64,
    },

    #[error("brute-force arbiter insufficient: tail bound {tail:e} at cap {cap}")]
    ArbiterInsufficient { cap: usize, tail: f64 },

    #[error("Bernoulli index {index} beyond table capacity {capacity}")]
    Capacity { index: usize, capacity: usize },

    #[error("profile cannot supply {0}")]
    Capability(String),

    #[error("link integral diverges: {0}")]
    DivergentLink(String),

    #[error("Neumann problem not solvable: {0}")]
    Solvability(String),

    #[error(
        "total variation did not stabilise under refinement (last relative change {last_change:e})"
    )]
    Estimation { last_change: f64 },

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}
