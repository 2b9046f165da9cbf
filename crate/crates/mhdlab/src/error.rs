//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fields live on different grids ({0} vs {1} points per axis)")]
    GridMismatch(usize, usize),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("kernel scale {epsilon} under-resolved: needs epsilon >= 2h = {min}")]
    UnderResolvedKernel { epsilon: f64, min: f64 },

    #[error("cutoff 2R = {two_r} exceeds box half-width {half}")]
    CutoffTooLarge { two_r: f64, half: f64 },

    #[error("ratio undefined: denominator vanishes")]
    UndefinedRatio,

    #[error("smallness condition not met: lhs = {lhs} > 1")]
    ConditionNotMet { lhs: f64 },

    #[error("fixed-point iteration failed to converge after {iters} iterations (last distance {last}); history: {history:?}")]
    PicardDiverged {
        iters: usize,
        last: f64,
        history: Vec<f64>,
    },

    #[error("non-finite value detected at t = {t}; last valid state retained")]
    BlowUp { t: f64 },

    #[error("sampled point outside the valid region: |x| = {r}")]
    OutOfRegion { r: f64 },

    #[error("generator has no forcing profile")]
    MissingForcingGenerator,

    #[error("configuration invalid:\n{}", .violations.join("\n"))]
    ConfigInvalid { violations: Vec<String> },

    #[error("snapshot format: {0}")]
    SnapshotFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
