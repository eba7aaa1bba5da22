use std::fmt;

use dgkernel_core::DgError;
use thiserror::Error;

use crate::ast::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Resolution,
    Arity,
    Operation,
    Alarm,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ErrorKind::Lexical => "lexical error",
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Resolution => "resolution error",
            ErrorKind::Arity => "arity error",
            ErrorKind::Operation => "operation error",
            ErrorKind::Alarm => "internal alarm",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{pos}: {kind}: {message}")]
pub struct SpecError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl SpecError {
    pub fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        SpecError { kind, pos, message: message.into() }
    }

    /// Wraps a core error raised while evaluating something at `pos`.
    pub fn from_core(pos: Pos, e: DgError) -> Self {
        let kind = if matches!(e, DgError::Alarm(_)) { ErrorKind::Alarm } else { ErrorKind::Operation };
        SpecError::new(kind, pos, e.to_string())
    }
}

pub type SpecResult<T> = std::result::Result<T, SpecError>;
