use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown generator name at byte {position}: {token:?}")]
    UnknownName { token: String, position: usize },

    #[error("malformed exponent at byte {position}: {text:?}")]
    MalformedExponent { text: String, position: usize },

    #[error("the rank-0 alphabet only spells the identity")]
    ZeroRank,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("expected {expected} generator images, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("F_{m} has no quotient isomorphic to F_{n}")]
    NoSurjection { m: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("invalid permutation tuple: {0}")]
    InvalidPermutation(String),

    #[error("permutation action is not transitive")]
    NotTransitive,

    #[error("enumeration needs {candidates} candidate tuples, cap is {cap}")]
    CapExceeded { candidates: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid json: {0}")]
    Json(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidAlphabet(_) => "invalid_alphabet",
            Error::UnknownName { .. } => "unknown_name",
            Error::MalformedExponent { .. } => "malformed_exponent",
            Error::ZeroRank => "zero_rank",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::Overflow => "overflow",
            Error::NoSurjection { .. } => "no_surjection",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::NotTransitive => "not_transitive",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Json(_) => "invalid_json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
