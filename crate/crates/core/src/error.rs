use thiserror::Error;

/// Errors shared across the crate's subsystems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid too small: n = {n}, need n >= {min}")]
    GridTooSmall { n: usize, min: usize },

    #[error("grid point count must be even, got {n}")]
    GridOddSize { n: usize },

    #[error("grid spacing must be positive, got {dx}")]
    GridBadSpacing { dx: f64 },

    #[error("non-finite value at index {index}")]
    NonFiniteValue { index: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid under-resolved for Hermite degree {degree}: {detail}")]
    GridUnderResolved { degree: usize, detail: String },

    #[error("coefficient sequence length {given} exceeds basis size {basis}")]
    CoefficientLength { given: usize, basis: usize },

    #[error("rational overflow: iterate exceeds {cap} bits at stage {stage}")]
    RationalOverflow { cap: u64, stage: usize },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("insufficient points above floor: found {found}, need {need}")]
    InsufficientPoints { found: usize, need: usize },

    #[error("interval ({lo}, {hi}) outside grid half-extent {extent}")]
    IntervalOutsideGrid { lo: f64, hi: f64, extent: f64 },

    #[error("differentiation noise floor reached at order {order}")]
    NoiseFloor { order: usize },

    #[error("oscillation too severe for envelope extraction ({points} envelope points)")]
    OscillationTooSevere { points: usize },

    #[error("angle beta = {beta} too close to a multiple of pi for the kernel method")]
    DegenerateAngle { beta: f64 },

    #[error("Hermite projection residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ProjectionResidual { residual: f64, tol: f64 },

    #[error("atom location {location} outside required range {range}")]
    AtomLocation { location: f64, range: String },
}
