use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("nullary symbol `{0}` is not supported; use a unary symbol constant on all algebras instead")]
    NullarySymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {0} is not a congruence")]
    NotCongruence(String),
    #[error("carrier of size {size} exceeds the enumeration guard {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("element set {0} is not closed under the operations")]
    NotSubuniverse(String),
    #[error("table is not a band: {0}")]
    NotBand(String),
    #[error("variety `{0}` has no decision procedure")]
    NoDecision(String),
    #[error("variety `{0}` has no equational base")]
    NoBase(String),
    #[error("variety `{name}` is flagged idempotent, but {detail}")]
    NotIdempotent { name: String, detail: String },
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("unknown variety preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("empty word")]
    EmptyWord,
    #[error("term {term} must only use the variables {allowed}")]
    WrongVariables { term: String, allowed: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
