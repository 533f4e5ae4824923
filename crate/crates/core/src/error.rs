//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("duplicate symbol `{0}` in expression")]
    DuplicateSymbol(String),

    #[error("invalid symbol `{name}`: {reason}")]
    InvalidSymbol { name: String, reason: &'static str },

    #[error("sample contains no words")]
    EmptySample,

    #[error("sample alphabet is empty")]
    EmptyAlphabet,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("size {size} exceeds configured bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("cycle detected: {}", witness_text(.witness))]
    Cycle { witness: Vec<String> },

    #[error("chains do not partition the alphabet: {0}")]
    ChainMismatch(String),

    #[error("path enumeration exceeded {0} paths")]
    TooManyPaths(usize),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("xml error in {source_name} at byte {position}: {msg}")]
    Xml {
        source_name: String,
        position: u64,
        msg: String,
    },
}

fn witness_text(witness: &[String]) -> String {
    let mut out = witness.join(" -> ");
    if let Some(first) = witness.first() {
        out.push_str(" -> ");
        out.push_str(first);
    }
    out
}

pub type Result<T> = std::result::Result<T, Error>;
