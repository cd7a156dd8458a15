use thiserror::Error;

use crate::numerics::SolveError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates one of its invariants.
    #[error("invalid parameter {field}: {reason}")]
    Validation { field: String, reason: String },

    /// An operation was called outside its domain (negative inputs, zero wage, ...).
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("unknown parameter field {0:?}")]
    UnknownField(String),

    #[error("unknown diagram node {0}")]
    UnknownNode(u32),

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    /// Two schedules that should intersect do not cross on the searched domain.
    #[error("no crossing: {0}")]
    NoCrossing(String),

    #[error(transparent)]
    Solve(#[from] SolveError),

    #[error("invalid graph data: {0}")]
    Graph(String),

    #[error("config: {0}")]
    Config(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(field: &str, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    /// Process exit code used by the command-line driver: 2 validation, 3 convergence, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. }
            | Error::Domain { .. }
            | Error::UnknownField(_)
            | Error::UnknownNode(_)
            | Error::UnknownScenario(_)
            | Error::Config(_)
            | Error::Graph(_)
            | Error::Json(_) => 2,
            Error::NoCrossing(_) | Error::Solve(_) => 3,
            Error::Io(_) => 4,
        }
    }

    /// True for failures of the equilibrium solvers rather than bad input.
    pub fn is_convergence(&self) -> bool {
        self.exit_code() == 3
    }
}
