use std::fmt;

use crate::surface::{ParseError, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Unbound,
    Mismatch,
    NotAType,
    LevelOrder,
    NoSubtype,
    Parse,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 6] = [
        ErrorKind::Unbound,
        ErrorKind::Mismatch,
        ErrorKind::NotAType,
        ErrorKind::LevelOrder,
        ErrorKind::NoSubtype,
        ErrorKind::Parse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Unbound => "UNBOUND",
            ErrorKind::Mismatch => "MISMATCH",
            ErrorKind::NotAType => "NOT_A_TYPE",
            ErrorKind::LevelOrder => "LEVEL_ORDER",
            ErrorKind::NoSubtype => "NO_SUBTYPE",
            ErrorKind::Parse => "PARSE",
        }
    }

    pub fn from_name(name: &str) -> Option<ErrorKind> {
        ErrorKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct ElabError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl ElabError {
    pub fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> ElabError {
        ElabError {
            kind,
            span,
            message: message.into(),
        }
    }
}

impl From<ParseError> for ElabError {
    fn from(e: ParseError) -> ElabError {
        ElabError::new(ErrorKind::Parse, e.span, e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ElabError>;
