use thiserror::Error;

use crate::report::Counterexample;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("malformed cocycle: {0}")]
    MalformedCocycle(String),

    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("cannot parse {what} at position {position}: {message}")]
    Parse {
        what: &'static str,
        position: usize,
        message: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("undeclared label `{0}`")]
    UndeclaredLabel(String),

    #[error("arity error: {0}")]
    Arity(String),

    #[error("operation role `{0}` is not provided by the algebra")]
    MissingRole(String),

    #[error("{0} requires a commutative index semigroup")]
    NonCommutativeIndex(String),

    #[error("checks over an infinite index semigroup need an explicit finite window")]
    NoWindow,

    #[error("index {0} falls outside the window on which the operators are defined")]
    WindowClosure(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index structure mismatch: {0}")]
    IndexMismatch(String),

    #[error("hypothesis {hypothesis} does not hold: {counterexample}")]
    HypothesisViolated {
        hypothesis: String,
        counterexample: Box<Counterexample>,
    },

    #[error("precondition {what} does not hold: {counterexample}")]
    PreconditionFailed {
        what: String,
        counterexample: Box<Counterexample>,
    },

    #[error("product of the empty tree with itself is undefined")]
    EmptyProduct,

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl Error {
    /// Process exit status for the command-line front end:
    /// 2 for malformed input, 3 for contract violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MalformedTable(_)
            | Error::MalformedCocycle(_)
            | Error::Schema { .. }
            | Error::Parse { .. }
            | Error::Io { .. }
            | Error::UnknownName { .. }
            | Error::UndeclaredLabel(_)
            | Error::Arity(_) => 2,
            _ => 3,
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
