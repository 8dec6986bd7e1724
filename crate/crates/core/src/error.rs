use thiserror::Error;

use crate::geom::VertexId;

/// Errors produced by the geometry kernel, the pipeline and the graph laboratory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("need at least 4 points (got {0})")]
    TooFewPoints(usize),

    #[error("general position violated: {0}")]
    GeneralPosition(String),

    #[error("empty point list")]
    EmptyInput,

    #[error("face {face:?} is claimed by {count} tetrahedra")]
    FaceInconsistency { face: [VertexId; 3], count: usize },

    #[error("rotation system does not close: {0}")]
    NonClosingTrace(String),

    #[error("no perfect matching: maximum matching covers {matched} of {vertices} vertices")]
    NoPerfectMatching { matched: usize, vertices: usize },

    #[error("no interior face connects two distinct cycles")]
    NoConnectingFace,

    #[error("no valid splice: {0}")]
    SpliceFailure(String),

    #[error("vertex {0} lies in no live tetrahedron")]
    LocationFailure(VertexId),

    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },

    #[error("chord ({0}, {1}) together with its cycle arc does not bound a face")]
    NotAFace(usize, usize),

    #[error("{0} interior point(s) present; every point must lie on the hull")]
    InteriorPointsPresent(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid mesh state: {0}")]
    Internal(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for errors caused by degenerate or undersized input rather than by a defect.
    pub fn is_input_rejection(&self) -> bool {
        matches!(
            self,
            Error::TooFewPoints(_)
                | Error::GeneralPosition(_)
                | Error::EmptyInput
                | Error::InteriorPointsPresent(_)
                | Error::NotCubic { .. }
                | Error::InvalidGraph(_)
                | Error::Parse { .. }
        )
    }
}
