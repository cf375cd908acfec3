use thiserror::Error;

/// Errors raised by the library.
///
/// `Precondition`, `Domain` and `ResourceLimit` are caller mistakes; `Invariant`
/// means a computed value contradicted something that must hold and is
/// always worth a bug report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{op}: precondition violated: {msg}")]
    Precondition { op: &'static str, msg: String },

    #[error("{op}: argument outside the domain: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: resource limit exceeded: {msg}")]
    ResourceLimit { op: &'static str, msg: String },

    #[error("invalid configuration class: {0}")]
    InvalidConfig(String),

    #[error("field too small: {0}")]
    Field(String),

    #[error("sampling budget exhausted after {attempts} attempts (seed {seed})")]
    SamplingExhausted { attempts: usize, seed: u64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn pre(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Precondition { op, msg: msg.into() }
    }

    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
