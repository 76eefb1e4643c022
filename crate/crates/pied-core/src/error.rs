//! Error type shared by all library modules.

use thiserror::Error;

/// Everything that can go wrong while building profiles, traces, spectra,
/// bounds, or mitigation models. Variants carry the offending values so CLI
/// messages can name them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be a positive integer, got 0")]
    ZeroArgument,

    #[error("dimension must be a power of two and at least 2, got {d}")]
    InvalidDimension { d: usize },

    #[error("amplitude profile must be unit-normalized: sum of squared amplitudes is {sum}")]
    NotNormalized { sum: f64 },

    #[error("amplitude profile must have no zero entries, found one at index {index}")]
    ZeroAmplitude { index: usize },

    #[error("subinterval count must be even and at least 2 for composite Simpson quadrature, got {p}")]
    OddSubintervals { p: usize },

    #[error("trace must hold an odd number of uniform samples (even subinterval count), got {len}")]
    BadTraceLength { len: usize },

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("noise strength must lie in [0, 1), got {epsilon}")]
    EpsilonOutOfRange { epsilon: f64 },

    #[error("mode index n = {n} lies outside [{lo}, {hi}]")]
    ModeOutOfRange { n: u64, lo: u64, hi: u64 },

    #[error("curve argument must be positive, got {n}")]
    NonPositiveArgument { n: f64 },

    #[error("divisor class k must be at least 2, got {k}")]
    KTooSmall { k: u64 },

    #[error("divisor class k = {k} must satisfy 2 <= k < d/2 = {half}")]
    KOutOfRange { k: u64, half: f64 },

    #[error("calibration needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("calibration dimensions must be distinct")]
    DuplicateDimension,

    #[error("calibration factors must all be positive")]
    NonPositiveFactor,

    #[error("value lists must have equal nonzero length, got {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("every noisy mode is zero; no rescaling ratio is defined")]
    AllZeroNoisy,

    #[error("total gate count must be at least 1")]
    ZeroGateCount,

    #[error("folded gate count {folded} exceeds total gate count {total}")]
    FoldedExceedsTotal { folded: u64, total: u64 },

    #[error("scale factors must be at least two distinct values including 1.0")]
    BadScaleFactors,

    #[error("scaled noise must stay below 1: xi = {xi} times epsilon = {epsilon} is not")]
    ScaledNoiseTooStrong { xi: f64, epsilon: f64 },

    #[error("polynomial fit of order {order} needs at least {need} points, got {got}")]
    UnderDetermined { order: usize, need: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
