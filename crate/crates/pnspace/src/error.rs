use crate::report::VerificationReport;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the domain a function requires.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value or structure failed a structural precondition at build time.
    #[error("construction error: {0}")]
    Construction(String),

    /// A config file or config string could not be interpreted.
    #[error("config error: {0}")]
    Config(String),

    /// A name did not match any known t-norm, triangle function, space, or campaign.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A randomized hypothesis check failed during a guarded construction.
    /// The report carries the witness; the construction is refused.
    #[error("hypothesis check failed: {}", .0.campaign)]
    Hypothesis(Box<VerificationReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
