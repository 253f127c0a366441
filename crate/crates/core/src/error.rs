use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid periodic parameters: {0}")]
    InvalidProfile(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("value {0} is outside {{0,1,2}}")]
    InvalidValue(u8),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("invalid occurrence path {0:?}")]
    InvalidOccurrence(Vec<usize>),
    #[error("variable x{index} exceeds the declared variable count {nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("a bare variable is a projection, not a function of R")]
    BareVariable,
    #[error("formula exceeds size cap: {0}")]
    FormulaTooLarge(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("criterion inapplicable: {0}")]
    Inapplicable(String),
    #[error("invalid family descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
