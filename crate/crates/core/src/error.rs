use alloc::string::String;

/// Errors produced by graph construction and the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("non-positive conductance {weight} on edge ({i}, {j})")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} has zero degree")]
    ZeroDegree(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("symmetric eigensolver did not converge")]
    NoConvergence,
    #[error("graph is not regular")]
    NotRegular,
    #[error("slightly-regular certificate was rejected")]
    CertificateRejected,
    #[error("edge ({0}, {1}) is not present in the original graph")]
    NotAnEdge(usize, usize),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
