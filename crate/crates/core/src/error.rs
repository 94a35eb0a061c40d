use thiserror::Error;

use crate::bdd::BddError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),
    #[error("atom `{0}` declared as both input and output")]
    Partition(String),
    #[error("duplicate declaration of atom `{0}`")]
    DuplicateAtom(String),
    #[error("duplicate goal label `{0}`")]
    DuplicateLabel(String),
    #[error("no goals declared")]
    NoGoals,
    #[error("position {pos} out of range for trace of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("atom `{0}` is not part of the automaton alphabet")]
    SymbolOutsideAlphabet(String),
    #[error("operator `{0}` is not in the core fragment")]
    NonCoreOperator(&'static str),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u64 },
    #[error("time budget exhausted")]
    Timeout,
    #[error("unrealizable: {{{0}}}")]
    Unrealizable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error("malformed transducer: {0}")]
    Transducer(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }

    /// True for errors caused by a configured budget (states, nodes, time).
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Resource { .. } | Error::Timeout | Error::Bdd(BddError::NodeCeiling { .. })
        )
    }
}
