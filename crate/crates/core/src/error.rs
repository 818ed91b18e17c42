use thiserror::Error;

use crate::timex::CollisionClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("instance generation failed: {0}")]
    Generation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    /// A flow that breaks capacity or conservation on the time-expanded network.
    #[error("flow structure: {0}")]
    FlowStructure(String),
    /// A plan whose flow image would exceed a capacity.
    #[error("{class} collision: {detail}")]
    Collision { class: CollisionClass, detail: String },
    #[error("model: {0}")]
    Model(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("time limit reached: {0}")]
    Timeout(String),
    #[error("external solver: {0}")]
    ExternalSolver(String),
    /// An assignment returned by a solver that does not satisfy the model.
    #[error("solver integrity: {0}")]
    Integrity(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
