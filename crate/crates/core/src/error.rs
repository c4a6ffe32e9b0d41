use thiserror::Error;

use crate::term::Position;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}, column {column}: symbol `{symbol}` used with arity {found}, previously {expected}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
        line: usize,
        column: usize,
    },

    #[error("line {line}, column {column}: left-hand side of rule {rule} is the variable `{var}`")]
    LhsVariable {
        rule: String,
        var: String,
        line: usize,
        column: usize,
    },

    #[error("unsupported condition semantics `{0}`; only ORIENTED is supported")]
    UnsupportedSemantics(String),

    #[error("invalid position {position} in term {term}")]
    InvalidPosition { position: Position, term: String },

    #[error("invalid precedence: {0}")]
    Precedence(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
