use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial parse error at byte {pos}: {msg}")]
    PolyParse { pos: usize, msg: String },

    #[error("operands have different variable arity")]
    ArityMismatch,

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },

    #[error("invalid diagram: {0}")]
    Invalid(String),

    #[error("vertex {0} is not a crossing")]
    UnknownCrossing(usize),

    #[error("state sum over {crossings} crossings exceeds the limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("move not applicable: {0}")]
    StaleMove(String),

    #[error("bad gauss code: {0}")]
    Gauss(String),

    #[error("inconsistent height bounds: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
