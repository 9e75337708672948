use thiserror::Error;

/// Errors raised while building or running a spacetime simulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("laboratory timeline exhausted at node {node}")]
    TimelineExhausted { node: u64 },

    #[error("cell {x} needs lab node {needed} but the timeline ends at node {last}")]
    TimelineTooShort { x: i64, needed: u64, last: u64 },

    #[error("particle left the lattice: cell {x} does not exist")]
    OutOfSpace { x: i64 },

    #[error("cell {x} is already occupied")]
    CellOccupied { x: i64 },

    #[error("interaction forbidden: motion of the particle is not completed")]
    MotionInProgress,

    #[error("interaction forbidden: particle time is stopped (|j| = {momentum} >= resolution {resolution})")]
    TimeStopped { momentum: u64, resolution: u64 },

    #[error("relative error undefined for an exact value of zero")]
    ZeroReference,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
