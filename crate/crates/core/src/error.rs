use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank mismatch: expected S_{expected}, got S_{found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("simple reflection index {index} out of range for S_{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{0} is not a Grassmannian permutation for the requested descent")]
    NotGrassmannian(String),

    #[error("{perm} is not a minimal coset representative for the parabolic subgroup")]
    NotMinimalRepresentative { perm: String },

    #[error("class not in span of generator monomials (engine bug): {0}")]
    NotInSpan(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("negative q-exponent in closed-form result: {0}")]
    FormulaViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}:{line}: corrupt cache record: {reason}")]
    CacheCorrupt {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
