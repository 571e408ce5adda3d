use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported characteristic {0}: need an odd prime no larger than 251")]
    UnsupportedPrime(u32),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("binomial C({n}, {r}) out of range")]
    BinomialRange { n: u64, r: u64 },
    #[error("nonunitary polynomial cannot contain the unit")]
    UnitInNonunitary,
    #[error("no image given for x{0} (required in nonunitary mode)")]
    MissingAssignment(u32),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("rank {0} out of range 1..=64")]
    RankOutOfRange(u32),
    #[error("generator e{index} outside rank {rank}")]
    GeneratorOutOfRange { index: u32, rank: u32 },
    #[error("exhaustive basis strategy needs a multilinear polynomial")]
    NotMultilinear,
    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("term {0} is not in BSS")]
    NotBss(String),
    #[error("normal form has support outside the enumerated component")]
    OutsideComponent,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid space description: {0}")]
    BadSpace(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
