//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by parsing, construction, and linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty basis")]
    EmptyBasis,

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("missing column for `{0}`")]
    MissingColumn(String),

    #[error("basis mismatch between operands")]
    BasisMismatch,

    #[error("map is singular")]
    Singular,

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("zero-weight arc {src} -> {dst}")]
    ZeroWeight { src: String, dst: String },

    #[error("duplicate arc {src} -> {dst}")]
    DuplicateArc { src: String, dst: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("graph has {0}")]
    InvalidGraph(String),

    #[error("ambiguous support: arc {src} -> {dst} appears with weights {first} and {second}")]
    AmbiguousSupport {
        src: String,
        dst: String,
        first: String,
        second: String,
    },

    #[error("not a Markov-shaped coalgebra: {0}")]
    NotMarkov(String),

    #[error("vertex name `{0}` collides with the shadow prefix `h_`")]
    ShadowNameClash(String),

    #[error("braid index s{index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("need at least 2 strands, got {0}")]
    StrandCount(usize),

    #[error("arity mismatch: expected {expected} tensor factors, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("state space dim^strands overflows: dim {dim}, strands {strands}")]
    StateSpaceTooLarge { dim: usize, strands: usize },

    #[error("map is not a Yang-Baxter solution")]
    NotYangBaxter,
}

pub type Result<T> = std::result::Result<T, Error>;
