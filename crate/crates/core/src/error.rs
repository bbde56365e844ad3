use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A point does not belong to the space it was used with (wrong kind,
    /// wrong dimension, off the hyperboloid sheet, offset past an edge end...).
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    /// A numeric argument is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested operation is not defined for this space (or law/space,
    /// set/space combination).
    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    /// A set descriptor is malformed or incompatible with its space.
    #[error("invalid set: {0}")]
    InvalidSet(String),

    /// An iterative scheme exhausted its budget without meeting its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// An input that must be nondegenerate (e.g. two distinct points) was not.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A cyclic solver was given a noncyclic map or vice versa.
    #[error("wrong map mode: {0}")]
    WrongMode(String),

    /// A point handed to a map does not lie in the map's domain A ∪ B.
    #[error("point outside map domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
