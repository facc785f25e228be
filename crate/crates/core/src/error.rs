use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {0}{1}")]
    InvalidType(String, usize),
    #[error("unknown cartan type letter `{0}`")]
    UnknownTypeLetter(String),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("point is not in the closed fundamental alcove")]
    OutsideAlcove,
    #[error("invalid facet: {0}")]
    InvalidFacet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("affine root {0} is not shallow at the given point")]
    NotShallow(String),
    #[error("commutator of affine roots with parallel gradients is trivial or torus-valued")]
    ParallelGradients,
    #[error("unsupported field size {0}: must be a prime power not exceeding {1}")]
    FieldSize(u64, u64),
    #[error("field element out of range")]
    FieldElement,
    #[error("pinning `{0}` is not available for this root system")]
    Pinning(String),
    #[error("character parameters do not match the shallow roots: {0}")]
    CharacterDomain(String),
    #[error("zero scalar")]
    ZeroScalar,
    #[error("scalar action does not preserve the relations; the character space is not a subspace over the full residue field here")]
    NotFieldLinear,
    #[error("character is trivial")]
    TrivialCharacter,
    #[error("invalid parabolic index set: {0}")]
    InvalidIndexSet(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("output closed")]
    OutputClosed,
}

pub type Result<T> = std::result::Result<T, Error>;
