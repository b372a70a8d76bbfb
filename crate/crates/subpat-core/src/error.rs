use thiserror::Error;

/// Coarse error category; the CLI maps it to an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Resource,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("automaton has no states")]
    NoStates,
    #[error("transition from `{state}` on `{symbol}` is missing (use --complete to add a sink)")]
    MissingTransition { state: String, symbol: String },
    #[error("transition from `{state}` on `{symbol}` is not deterministic")]
    Nondeterministic { state: String, symbol: String },
    #[error("state `{state}` has {count} predecessors on `{symbol}` inside the trim part")]
    NotReverseDeterministic { state: String, symbol: String, count: usize },
    #[error("malformed word `{0}`")]
    MalformedWord(String),
    #[error("ill-formed pattern: {0}")]
    IllFormedPattern(String),
    #[error("unknown built-in pattern `{0}`")]
    UnknownPattern(String),
    #[error("pattern and automaton directions differ: {0}")]
    DirectionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search budget of {budget} configurations exhausted after exploring {explored}")]
    BudgetExceeded { budget: u64, explored: u64 },
    #[error("monoid exceeds the cap of {0} elements")]
    MonoidTooLarge(usize),
    #[error("automaton too large for this operation: {0}")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("at level {level}: {source}")]
    AtLevel { level: String, source: Box<Error> },
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExceeded { .. } | Error::MonoidTooLarge(_) | Error::TooLarge(_) => {
                ErrorKind::Resource
            }
            Error::Invariant(_) => ErrorKind::Internal,
            Error::AtLevel { source, .. } => source.kind(),
            _ => ErrorKind::InvalidInput,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
