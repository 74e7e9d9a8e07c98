use thiserror::Error;

use crate::witness::TBound;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("regime violation: {0}")]
    Regime(String),
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("malformed machine: {0}")]
    MalformedMachine(String),
    #[error("game is not in the locally-suboptimal set for this regime")]
    NotInLs,
    #[error("witness horizon {} exceeds cap {cap}", .bound.t_min)]
    HorizonExceeded { bound: TBound, cap: usize },
    #[error("payoff set grew past {cap} vectors at horizon {horizon}")]
    LadderCap { cap: usize, horizon: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
