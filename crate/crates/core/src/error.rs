//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two operands live in different truncated algebras (m, n or caps differ).
    #[error("shape mismatch: ({0}) vs ({1})")]
    ShapeMismatch(String, String),

    /// A generator index is outside the declared shape.
    #[error("index {index} out of range for {kind} (max {max})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        max: usize,
    },

    /// Text input rejected, with a byte position and reason.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An operation required a parity-homogeneous element.
    #[error("element is not parity-homogeneous: {0}")]
    NotHomogeneous(String),

    /// A documented precondition was violated.
    #[error("{0}")]
    Precondition(String),

    /// Division by zero or evaluation at a pole.
    #[error("division by zero / evaluation at a pole: {0}")]
    Pole(String),

    /// A linear solve that the operation relies on has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An sl2-triple completion failed.
    #[error("cannot complete sl2 triple: {0}")]
    NotCompletable(String),

    /// A named object (algebra id, series, suite) is not known.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A candidate basis fails to close under the bracket.
    #[error("not closed under bracket: witness pair ({0}, {1})")]
    NotClosed(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
