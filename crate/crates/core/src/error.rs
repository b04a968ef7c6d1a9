use thiserror::Error;

/// Errors raised before any verdict can be produced.
///
/// Verdicts themselves (an axiom failing, a condition being violated) are
/// reported through the report types, never through this enum.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PmError {
    #[error("matrix has {rows} rows (row {bad_row} has {bad_len} entries) but the space has {points} points")]
    DimensionMismatch {
        points: usize,
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("point `{0}` is outside the domain of the space")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("space `{0}` carries no declared infimum of self-distances")]
    MissingMetadata(String),
    #[error("unknown catalog identifier `{0}`")]
    UnknownName(String),
    #[error("map `{map}` sends `{from}` outside the space")]
    MapClosure { map: String, from: String },
    #[error("cannot parse rational `{0}` (expected \"num/den\")")]
    ParseRational(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("space fails the partial metric axioms: {0}")]
    NotPartialMetric(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, PmError>;
