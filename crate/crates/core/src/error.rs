use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported modulus q={q}: {reason}")]
    UnsupportedModulus { q: u64, reason: &'static str },

    #[error("division by zero in F_{q}")]
    DivisionByZero { q: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: q={left} vs q={right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("coordinate {value} out of range for q={q}")]
    CoordinateOutOfRange { value: i64, q: u32 },

    #[error("rank {rank} out of range for q^d={bound}")]
    RankOutOfRange { rank: u64, bound: u64 },

    #[error("the zero vector does not span a line")]
    ZeroVector,

    #[error("operation needs dimension at least {needed}, got d={d}")]
    DimensionTooSmall { needed: usize, d: usize },

    #[error("ambient space q^d = {size} exceeds the cap of {cap} points")]
    TooLarge { size: u64, cap: u64 },

    #[error("{0} requires a nonempty set")]
    EmptySet(&'static str),

    #[error("set is not contained in the paraboloid")]
    NotOnParaboloid,

    #[error("cannot draw {requested} points from a family of {available}")]
    Infeasible { requested: usize, available: usize },

    #[error("variety contains the origin")]
    OriginInVariety,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("report invariant violated: {0}")]
    Invariant(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
