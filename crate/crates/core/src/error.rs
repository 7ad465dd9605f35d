use thiserror::Error;

/// Errors produced while building groups, computing spectra or running checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),

    #[error("cayley table parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("entry {value} at row {row}, column {column} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        column: usize,
        value: usize,
        order: usize,
    },

    #[error(
        "latin square violated: row {row} repeats element {value} (columns {first} and {second})"
    )]
    RepeatedInRow {
        row: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("latin square violated: column {column} repeats element {value} (rows {first} and {second})")]
    RepeatedInColumn {
        column: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("group order {order} exceeds the supported maximum {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("operation needs dense G x G storage; order {order} exceeds the cap {cap}")]
    TooLargeForPairs { order: usize, cap: usize },

    #[error("class matrix combination has a repeated eigenvalue after {attempts} attempts")]
    DegenerateSpectrum { attempts: usize },

    #[error("character table check failed: {0}")]
    BadCharacterTable(String),

    #[error("minimum nontrivial degree {degree:?} disagrees with the perfectness check (group perfect: {perfect})")]
    InconsistentDegree {
        degree: Option<usize>,
        perfect: bool,
    },

    #[error("function has length {actual}, group order is {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("function violates constraint: {0}")]
    Constraint(String),

    #[error("{quantity} should be real but has imaginary part {imaginary:e}")]
    ImaginaryResidue { quantity: String, imaginary: f64 },

    #[error("{quantity}: two evaluation routes differ by {residual:e}")]
    IdentityMismatch { quantity: String, residual: f64 },

    #[error("invalid search configuration: {0}")]
    Search(String),

    #[error("unknown group identifier {0:?}")]
    UnknownGroup(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
