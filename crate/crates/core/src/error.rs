use thiserror::Error;

use crate::suites::CalibrationTable;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A primitive was evaluated outside its smooth domain (e.g. `sqrt` of a
    /// nonpositive value, a point outside the unit ball of a sphere chart).
    #[error("domain error at {point:?}: {reason}")]
    Domain { point: Vec<f64>, reason: String },

    #[error("product leaves the chart: g = {g:?}, h = {h:?}")]
    ChartExit { g: Vec<f64>, h: Vec<f64> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown loop `{0}`")]
    UnknownLoop(String),

    #[error("malformed loop spec `{spec}`: {reason}")]
    MalformedParameter { spec: String, reason: String },

    #[error("invalid derivative request: {0}")]
    InvalidRequest(String),

    #[error("finite-difference step {0} outside (0, 1e-2]")]
    InvalidStep(f64),

    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),

    #[error(
        "sampling gave up after {attempts} attempts ({accepted} of {requested} samples accepted)"
    )]
    SamplingExhausted {
        attempts: usize,
        accepted: usize,
        requested: usize,
    },

    #[error("unknown identity family `{0}`")]
    UnknownFamily(String),

    #[error("convention calibration failed: {passing} of 4 assignments pass")]
    Calibration {
        passing: usize,
        table: Box<CalibrationTable>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
