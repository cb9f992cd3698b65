use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `pos` is a byte offset into the input.
    #[error("parse error in {what} at byte {pos}: {msg}")]
    Parse {
        what: &'static str,
        pos: usize,
        msg: String,
    },

    /// Well-formed input that violates a structural invariant.
    #[error("invalid {what}: {msg}")]
    Invalid { what: &'static str, msg: String },

    #[error("precision error: {0}")]
    Precision(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("cannot compare series with validity orders {0} and {1} for strict equality")]
    OrderMismatch(String, String),

    #[error("unknown class {name:?}{}", suggest(.suggestions))]
    NotFound {
        name: String,
        suggestions: Vec<String>,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("numeric evaluation: {0}")]
    Numeric(String),
}

fn suggest(s: &[String]) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!(" (did you mean {}?)", s.join(", "))
    }
}

impl Error {
    pub(crate) fn parse(what: &'static str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            msg: msg.into(),
        }
    }
}
