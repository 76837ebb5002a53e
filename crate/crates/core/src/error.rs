use thiserror::Error;

use crate::admissibility::AdmissibilityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("parameters a={a}, sigma={sigma} are not admissible", a = .0.params.a(), sigma = .0.params.sigma())]
    NotAdmissible(Box<AdmissibilityReport>),

    #[error("denominator nearly vanishes at xi={xi} (|Z|={abs:e})")]
    NearZeroDenominator { xi: f64, abs: f64 },

    #[error("reciprocal symbol has a near-zero at grid index {index} (|s|={abs:e})")]
    SymbolZero { index: usize, abs: f64 },

    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("x={x} is outside the reliable range [{lo}, {hi}]")]
    Range { x: f64, lo: f64, hi: f64 },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("interpolation check failed: {0}")]
    InterpolationMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
