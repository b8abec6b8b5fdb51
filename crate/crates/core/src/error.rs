use alloc::string::String;

/// Errors raised by the engine. Each variant has a stable code string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("expression contains a non-smooth node ({0})")]
    NonSmoothExpression(&'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not Laurent-expandable at 0+: {0}")]
    NotLaurent(String),
    #[error("division by a germ equal to zero")]
    DivisionByZeroGerm,
    #[error("not an entire germ: {0}")]
    NotEntire(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownIdentifier { .. } => "UNKNOWN_IDENTIFIER",
            Error::NonSmoothExpression(_) => "NON_SMOOTH_EXPRESSION",
            Error::Domain(_) => "DOMAIN_ERROR",
            Error::NotLaurent(_) => "NOT_LAURENT",
            Error::DivisionByZeroGerm => "DIVISION_BY_ZERO_GERM",
            Error::NotEntire(_) => "NOT_ENTIRE",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::WindowTooSmall(_) => "WINDOW_TOO_SMALL",
            Error::InvalidInput(_) => "INVALID_INPUT",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
