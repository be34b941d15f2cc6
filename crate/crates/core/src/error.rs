use thiserror::Error;

/// Failure modes shared by the library and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters outside the admissible range (bad prime, bad exponents,
    /// malformed coefficient group, constraint violation on cocycle data).
    #[error("parameter domain error: {0}")]
    Domain(String),

    /// A pair of maps that should compose to zero does not.
    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),

    /// A feature the library deliberately does not provide.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A request outside the computed range of degrees or sizes.
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A perturbation whose `delta * h` is not nilpotent within the cap.
    #[error("perturbation not small: {0}")]
    NotSmall(String),

    /// Independent computations of the same object disagree.
    #[error("route disagreement: {0}")]
    RouteDisagreement(String),

    /// A structure fails one of its defining identities.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
