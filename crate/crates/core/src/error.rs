use std::fmt;

use thiserror::Error;

/// A position in source text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported exponent {0}")]
    UnsupportedExponent(String),
    #[error("cannot demote {value} to {target}")]
    Demotion { value: String, target: String },
    #[error("bad symbol name '{0}'")]
    BadSymbolName(String),
    #[error("{message}")]
    Lex { pos: Pos, message: String },
    #[error("{message}")]
    Parse { pos: Pos, message: String },
    #[error("name '{0}' is not defined")]
    Name(String),
    #[error("{0}")]
    Type(String),
    #[error("{0}")]
    Conversion(String),
    #[error("empty input to {0}")]
    EmptyInput(String),
    #[error("{0}")]
    RingMismatch(String),
    #[error("monomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("zero operand in {0}")]
    ZeroOperand(String),
}

impl Error {
    /// The stable kind name printed in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::UnsupportedExponent(_) => "UnsupportedExponent",
            Error::Demotion { .. } => "DemotionError",
            Error::BadSymbolName(_) => "BadSymbolName",
            Error::Lex { .. } => "LexError",
            Error::Parse { .. } => "ParseError",
            Error::Name(_) => "NameError",
            Error::Type(_) => "TypeError",
            Error::Conversion(_) => "ConversionError",
            Error::EmptyInput(_) => "EmptyInput",
            Error::RingMismatch(_) => "RingMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ZeroOperand(_) => "ZeroOperand",
        }
    }

    /// Position carried by lexer and parser errors.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            Error::Lex { pos, .. } | Error::Parse { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// An error attached to the source position where it surfaced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub error: Error,
}

impl Diagnostic {
    pub fn new(pos: Pos, error: Error) -> Self {
        // Lexer and parser errors know better where they happened.
        let pos = error.pos().unwrap_or(pos);
        Diagnostic { pos, error }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.pos, self.error.kind(), self.error)
    }
}

impl std::error::Error for Diagnostic {}
