use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    NvarsMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),

    #[error("inner ideal is not contained in the outer ideal")]
    NotContained,

    #[error("inner and outer ideals are equal")]
    EqualIdeals,

    #[error("{nvars} variables exceed the enumeration limit of {limit}")]
    TooManyVariables { nvars: usize, limit: usize },

    #[error("hypothesis of {theorem} not satisfied by n={n}, t={t}")]
    Hypothesis {
        theorem: &'static str,
        n: u64,
        t: u64,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("report error: {0}")]
    Report(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
