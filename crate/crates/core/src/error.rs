use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// A strategy broke the schedule of a blackboard protocol.
    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("rejection sampler exceeded {0} steps")]
    StepCap(u64),

    #[error("graph is not bipartite")]
    NotBipartite,

    /// A streaming algorithm's state did not survive serialization.
    #[error("state serialization: {0}")]
    State(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
