use thiserror::Error;

/// Errors produced by state construction, readout assembly, and sensitivity
/// evaluation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("a state needs at least one mode")]
    EmptyState,

    #[error("mode index {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("operation requires two distinct modes, got {0} twice")]
    DuplicateMode(usize),

    #[error("transmissivity {0} outside [0, 1]")]
    TransmissivityOutOfRange(f64),

    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("matrix is not unitary (max |UU† - I| = {0:.3e})")]
    NotUnitary(f64),

    #[error("covariance is not a physical quantum state (min eigenvalue of cov + iΩ = {0:.3e})")]
    NonPhysicalCovariance(f64),

    #[error("readout must contain at least one term")]
    EmptyReadout,

    #[error("readout lists mode {0} more than once")]
    DuplicateReadoutMode(usize),

    #[error("local-oscillator scale must be positive, got {0}")]
    NonPositiveLoScale(f64),

    #[error("estimator slope vanishes at the evaluation point (slope = {0:.3e}); the phase leaves no first-order trace in this readout")]
    DegenerateEstimator(f64),

    #[error("sampler needs at least two samples, got {0}")]
    TooFewSamples(usize),

    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("phase index {0} outside 1..=4")]
    PhaseIndexOutOfRange(usize),

    #[error("sweep grid is empty or not strictly increasing")]
    BadGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
