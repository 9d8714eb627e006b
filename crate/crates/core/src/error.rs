//! Shared error type.  Every variant is a user-facing validation failure;
//! internal invariant violations panic instead.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A `(g, k; p, b)` tuple violating one of the defining inequalities.
    /// The message names the violated inequality.
    #[error("invalid trisection type {tuple}: {violated}")]
    InvalidTrisectionType { tuple: String, violated: String },

    #[error("coordinate vector has rank {got}, surface basis has rank {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("curve class {class} is not primitive (coordinate gcd {gcd})")]
    NonPrimitiveCurve { class: String, gcd: i64 },

    #[error("curve system classes {i} and {j} have pairing {pairing}, expected 0")]
    SystemNotDisjoint { i: usize, j: usize, pairing: i64 },

    #[error("curve system has {got} classes, diagram type requires {expected}")]
    SystemSizeMismatch { expected: usize, got: usize },

    #[error("invalid slide: {reason}")]
    InvalidSlide { reason: String },

    #[error("diagram rejected: {summary}")]
    DiagramInvalid { summary: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("linking matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("invalid surgery slope 0/0")]
    IndeterminateSlope,

    #[error("lens space parameters p={p}, q={q} are not coprime")]
    LensNotCoprime { p: i64, q: i64 },

    #[error("plumbing chain is empty")]
    EmptyChain,

    #[error("formula error: {0}")]
    Formula(String),

    #[error("data file error: {0}")]
    Schema(String),

    #[error("family `{family}` expects parameters {expected:?}, got {got:?}")]
    ParamMismatch {
        family: String,
        expected: Vec<String>,
        got: Vec<String>,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("figure transcription required: the linking-matrix template for M(a1,a2,a3) is not loaded")]
    TranscriptionRequired,

    #[error("invalid knot specification: {0}")]
    InvalidKnot(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
