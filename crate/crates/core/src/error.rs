use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("character is identically zero")]
    ZeroCharacter,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("need at least {min} strands, got {n}")]
    TooFewStrands { n: usize, min: usize },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid swing set: {0}")]
    InvalidSwingSet(String),
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("expected a character on {expected} strands, got {found}")]
    WrongStrandCount { expected: usize, found: usize },
    #[error("free group rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("certificate does not match character: {0}")]
    CertificateMismatch(String),
    #[error("expected a {expected} circle, got {found}")]
    WrongCircleKind { expected: &'static str, found: &'static str },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
