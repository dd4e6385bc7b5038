use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid irrep SU({n}) lambda={lambda}: {reason}")]
    InvalidIrrep {
        n: usize,
        lambda: usize,
        reason: &'static str,
    },

    #[error("mode index {index} out of range for SU({n})")]
    ModeIndex { index: usize, n: usize },

    #[error("coset angle {name}={value} outside its range")]
    AngleRange { name: &'static str, value: f64 },

    #[error("coset point is for SU({got}), expected SU({expected})")]
    PointMismatch { expected: usize, got: usize },

    #[error("no exact coset quadrature for SU({0}); use a Monte Carlo grid")]
    NoExactGrid(usize),

    #[error("bad grid resolution: {0}")]
    BadResolution(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("structural failure: {0}")]
    Structure(String),

    #[error("phase fixing failed: highest-weight coefficient of sigma={0} vanishes")]
    PhaseFix(usize),

    #[error("highest-weight coefficient of sigma={sigma} is not positive ({value})")]
    NonPositiveCoefficient { sigma: usize, value: f64 },

    #[error("overlap matrix is singular")]
    SingularOverlap,

    #[error("band limit violated: resampled symbol differs by {0:e}")]
    BandLimit(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
