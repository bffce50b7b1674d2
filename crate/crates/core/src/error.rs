use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("euler number defined here only for even index (got {0})")]
    OddEulerIndex(u32),

    #[error("series divergent; analytic continuation out of scope (s = {0})")]
    DivergentSeries(f64),

    #[error("conditional convergence unsupported (order {0})")]
    ConditionalConvergence(u32),

    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: u32, reason: &'static str },

    #[error("pole chain: a = {0} must be positive")]
    PoleChain(f64),

    #[error("pole in bilateral chain at l = {0}")]
    BilateralPole(i64),

    #[error("cos node vanishes at theta_j = pi/2 (J = {0})")]
    VanishingCosNode(u32),

    #[error("N must be even (got {0})")]
    OddNodeCount(usize),

    #[error("integrand singularity off the PV set at x = {0}")]
    OffSetSingularity(f64),

    #[error("x = {0} is a singular point of the weight")]
    SingularPoint(f64),

    #[error("operator mismatch: {0}")]
    OperatorMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
