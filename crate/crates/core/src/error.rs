//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("structurally invalid crystal: {0}")]
    InvalidStructure(String),

    #[error("crystal violates axioms:\n{0}")]
    AxiomViolation(String),

    #[error("highest-weight characterizations disagree: {0}")]
    HighestWeightMismatch(String),

    #[error("crystals live over different root data")]
    DatumMismatch,

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("no seed crystal for fundamental weight ω_{index}")]
    MissingSeed { index: usize },

    #[error("seed crystal for ω_{index} is invalid: {reason}")]
    InvalidSeed { index: usize, reason: String },

    #[error("component identification failed: {0}")]
    Identification(String),

    #[error("not a finite root system (root enumeration exceeded bound)")]
    NotFiniteType,

    #[error("inadmissible stratum (l, m) = ({l}, {m}): need l - m in 2Z, l >= |m|")]
    InadmissibleStratum { l: i64, m: i64 },

    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("expected a unit series (valuation 0), got valuation {0:?}")]
    NotAUnit(Option<i64>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("schema error in {path}: {reason}")]
    Schema { path: String, reason: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
