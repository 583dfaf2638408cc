use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    /// A shipped or user-supplied table failed its own validation.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// An exact computation produced a value no valid input can produce.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("budget exceeded: {needed} evaluations requested, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("theorem hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("no closed form for {0}")]
    NoClosedForm(String),

    #[error("not a linear-code distribution: {0}")]
    NotLinearCode(String),

    #[error("identity-system inconsistency: {message}; closed form {closed_form}; linear solve {linear_solve}")]
    IdentitySystem {
        message: String,
        closed_form: String,
        linear_solve: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Integrity(_) => "integrity",
            Error::Inconsistency(_) => "inconsistency",
            Error::Budget { .. } => "budget",
            Error::Hypothesis(_) => "hypothesis",
            Error::NoClosedForm(_) => "no_closed_form",
            Error::NotLinearCode(_) => "not_linear_code",
            Error::IdentitySystem { .. } => "identity_system",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Refuses work whose evaluation count exceeds `budget`.
pub fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Budget { needed, budget })
    } else {
        Ok(())
    }
}
