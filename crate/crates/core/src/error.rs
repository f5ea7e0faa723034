use thiserror::Error;

/// Errors raised by the operator algebra, the dynamics layer and the checkers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A dense window cannot represent an image that leaves it.
    #[error("basis index {index} leaves the truncation window [-{half_width}, {half_width}]")]
    WindowOverflow { index: i64, half_width: u32 },

    #[error("dense operands live on different windows ([-{left}, {left}] vs [-{right}, {right}])")]
    WindowMismatch { left: u32, right: u32 },

    #[error("singular value iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("operator is not invertible at basis index {index}")]
    NotInvertible { index: i64 },

    /// The exact path needs a finite coefficient support or an explicit restriction.
    #[error("operator has unbounded support; {0}")]
    UnboundedSupport(&'static str),

    #[error("operation not supported: {0}")]
    Unsupported(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shift length {t} does not exceed 2J = {}", 2 * .j)]
    SupportCollision { t: u64, j: u32 },

    #[error("condition (*) fails: P_m U_{s}^n U_{l}^-n P_m has norm {norm:e} at n = {n}")]
    StarConditionUnverified { n: u64, s: usize, l: usize, norm: f64 },

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
