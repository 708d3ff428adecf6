use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("every cyclic factor must have order at least 2, got {0}")]
    InvalidOrder(u32),

    #[error("operation requires an elementary abelian 2-group, got orders {0:?}")]
    GroupNotExponentTwo(Vec<u32>),

    #[error("rank {rank} exceeds the supported bound {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("prefix length {h} exceeds rank {k}")]
    PrefixTooLong { h: usize, k: usize },

    #[error("vector of length {got} does not match group size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("canonical system is empty (p_g = 0)")]
    EmptyCanonicalSystem,

    #[error("operation requires p_g = 3, got {0}")]
    GenusNotThree(i64),

    #[error("base locus contains the whole branch curve D_{0}")]
    NonIsolatedBaseLocus(String),

    #[error("operation requires the base to be the projective plane, got dimension {0}")]
    BaseNotPlane(u32),

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid building data: {0}")]
    InvalidData(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
