use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root system rank must be at least 2, got {0}")]
    Rank(usize),
    #[error("invalid weight {coords:?}: {reason}")]
    InvalidWeight { coords: Vec<i64>, reason: String },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not Levi-dominant, so it does not define a homogeneous bundle")]
    NotLeviDominant(String),
    #[error("not a character: multiplicity of {weight} would become negative")]
    NotACharacter { weight: String },
    #[error("rank mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inconsistent long exact sequence at {slot} in degree {degree}: {detail}")]
    Contradiction {
        slot: String,
        degree: usize,
        detail: String,
    },
    #[error("long exact sequence leaves {slot} in degree {degree} unbounded")]
    Unbounded { slot: String, degree: usize },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
