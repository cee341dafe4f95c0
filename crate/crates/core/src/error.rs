use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("objects belong to different rings")]
    RingMismatch,

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("ring is not local")]
    NotLocal,

    #[error("axiom violated: {0}")]
    Axiom(String),

    #[error("integer overflow during exact arithmetic")]
    Overflow,

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// Two independent routes disagreed, or a report broke the hierarchy
    /// chain. Always a bug (or a false theorem instance).
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::OrderCap { .. } | Error::Budget(_))
    }
}
