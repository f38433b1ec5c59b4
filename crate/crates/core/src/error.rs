use thiserror::Error;

/// Failures surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular linear system (no pivot in column {column})")]
    SingularMatrix { column: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("ratio undefined: leading coefficient vanishes ({0})")]
    DegenerateRatio(String),

    #[error("expected an integer count, got {0}")]
    NonIntegerResult(String),

    #[error("profile width {width} exceeds the limit {limit}")]
    CapacityExceeded { width: usize, limit: usize },

    #[error("region has {count} tilings, more than the enumeration limit {limit}")]
    TooMany { count: String, limit: u64 },

    #[error("region admits no tiling")]
    Untileable,

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("conditioning event has probability zero")]
    ZeroConditioningProbability,

    #[error("quadrature did not converge within {nodes} nodes")]
    NoConvergence { nodes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolation(msg()))
    }
}
