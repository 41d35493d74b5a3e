use thiserror::Error;

/// Errors raised by the pmf, ray and bound routines.
///
/// Floating point payloads are carried as `f64` regardless of the scalar the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("masses sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("pmf for d = {d} needs {expected} entries, got {found}")]
    LengthMismatch {
        d: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value while mapping exchangeable pmf at index {index}")]
    Overflow { index: usize },
    #[error("moment order {order} outside 1..={d}")]
    OrderOutOfRange { order: usize, d: usize },
    #[error("marginal probability {p} is degenerate")]
    DegenerateMarginal { p: f64 },
    #[error("support pair ({j1}, {j2}) does not straddle pd = {pd}")]
    IndexOutOfRange { j1: usize, j2: usize, pd: f64 },
    #[error("indices ({i}, {j}, {k}) are not strictly increasing within 0..={d}")]
    InvalidTriple {
        i: usize,
        j: usize,
        k: usize,
        d: usize,
    },
    #[error("pd = {pd} is not an integer")]
    NonIntegerMean { pd: f64 },
    #[error("pmf mean {mean} differs from pd = {target}")]
    MeanMismatch { mean: f64, target: f64 },
    #[error("second cross moment {mu2} outside the admissible range [{min}, {max}]")]
    InfeasibleMoment { mu2: f64, min: f64, max: f64 },
    #[error("second moment {value} differs from target {target}")]
    SecondMomentMismatch { value: f64, target: f64 },
    #[error("ray set is empty")]
    EmptyRaySet,
    #[error("tail above VaR carries no mass")]
    EmptyTail,
    #[error("portfolio size must be at least {min}, got {d}")]
    InvalidDimension { d: usize, min: usize },
    #[error("marginal default probability {p} outside (0, 1)")]
    InvalidProbability { p: f64 },
    #[error("correlation {rho} outside (-1, 1]")]
    InvalidCorrelation { rho: f64 },
    #[error("confidence level {alpha} outside (0, 1)")]
    InvalidAlpha { alpha: f64 },
    #[error("correlation {rho} is not admissible for the beta mixing model")]
    InadmissibleCorrelation { rho: f64 },
    #[error("beta parameters must be positive, got a = {a}, b = {b}")]
    InvalidBetaParams { a: f64, b: f64 },
    #[error("operation requires a class {0} a correlation target")]
    CorrelationTarget(&'static str),
    #[error("ray support {support:?} must be 1 to 3 strictly increasing indices in 0..={d}")]
    InvalidSupport { support: Vec<usize>, d: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
