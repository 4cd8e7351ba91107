use thiserror::Error;

use crate::algebra::Alphabet;

/// Errors raised by the exact algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("letter {letter} does not belong to alphabet {alphabet}")]
    LetterOutOfRange { letter: String, alphabet: Alphabet },
    #[error("word `{word}` is not in {space}")]
    NotInSubspace { word: String, space: &'static str },
    #[error("operation requires the {expected} alphabet, got {got}")]
    WrongFamily { expected: &'static str, got: Alphabet },
    #[error("invalid index vector: {0}")]
    InvalidIndex(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

/// A parse failure with the byte offset of the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }

    /// Renders the input with a caret under the failing position.
    pub fn caret(&self, input: &str) -> String {
        let col = input[..self.pos.min(input.len())].chars().count();
        format!("{input}\n{}^ {}", " ".repeat(col), self.msg)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("divergent index ({0}): leading exponent 1 with trivial twist")]
    Divergent(String),
    #[error("word `{0}` is not admissible for evaluation")]
    Inadmissible(String),
    #[error("route disagreement for {what}: |Δ| = {delta:e} exceeds combined bound {bound:e}")]
    RouteDisagreement { what: String, delta: f64, bound: f64 },
    #[error("invalid evaluation request: {0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
