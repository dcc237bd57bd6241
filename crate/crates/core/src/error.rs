use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constraint system admits no solution.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A configured effort or memory budget would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A bounded search ran out of candidates before a hit.
    #[error("search exhausted after {tested} candidates: {what}")]
    SearchExhausted { what: String, tested: u64 },

    /// Malformed or truncated input data.
    #[error("input error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Input { line: Option<usize>, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn input(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Input {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by exhausted budgets rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::SearchExhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
