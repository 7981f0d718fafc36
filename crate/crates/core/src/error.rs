use thiserror::Error;

use crate::verdict::Witness;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("{what}: expected {expected}, found {found}")]
    ArityMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("ideal must be generated by coordinate variables")]
    NonCoordinateIdeal,

    #[error("precondition failed: {0}")]
    Precondition(Box<Witness>),

    #[error("unsupported form degree {0}")]
    UnsupportedDegree(usize),

    #[error("rank {rank} does not equal arity {arity}")]
    RankNotArity { rank: usize, arity: usize },

    #[error("relation is not linear: {0}")]
    NonLinear(String),

    #[error("composition is not clean: {0}")]
    NotClean(String),

    #[error("unsupported shape: {0}")]
    Unsupported(String),

    #[error("independent checks disagree: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ArityMismatch {
            what,
            expected,
            found,
        })
    }
}
