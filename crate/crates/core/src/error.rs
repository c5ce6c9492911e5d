use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library. Every fallible operation returns one of
/// these; none panic on bad input.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("curve order {0} is outside the supported range 1..=16")]
    InvalidOrder(u32),

    #[error("curve index {index} out of range for order {order} ({cells} cells)")]
    IndexOutOfRange { index: u64, order: u8, cells: u64 },

    #[error("cell ({x}, {y}) lies outside the {side}x{side} grid")]
    CellOutOfBounds { x: u32, y: u32, side: u32 },

    #[error("invalid {what}: {details}")]
    InvalidConfig { what: &'static str, details: String },

    #[error("sample point ({}, {}, {}) is within {limit:e} of a dipole", point[0], point[1], point[2])]
    NearSingularity { point: [f64; 3], limit: f64 },

    #[error("grid cell ({i}, {j}) at ({}, {}, {}) is within {limit:e} of a dipole", point[0], point[1], point[2])]
    SingularCell {
        i: u32,
        j: u32,
        point: [f64; 3],
        limit: f64,
    },

    #[error("field map side {map} does not match trajectory side {trajectory}")]
    GridMismatch { map: u32, trajectory: u32 },

    #[error("series of length {len} is too short; need at least {needed} values")]
    SeriesTooShort { len: usize, needed: usize },

    #[error("max lag {k_max} must be below the series length {len}")]
    LagOutOfRange { k_max: usize, len: usize },

    #[error("autocorrelation is undefined for a series with zero variance")]
    ConstantSeries,

    #[error("point set must contain at least one point")]
    EmptyPointSet,

    #[error("point ({}, {}) lies outside the {region} region", point[0], point[1])]
    PointOutsideRegion { point: [f64; 2], region: &'static str },

    #[error("visit order is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("exact tour solver is limited to 10 points, got {0}")]
    TooManyPoints(usize),

    #[error("level pair ({n1}, {n2}) needs two distinct indices >= 1")]
    InvalidLevelPair { n1: u32, n2: u32 },

    #[error("field segment needs at least two samples, got {0}")]
    TooFewSamples(usize),

    #[error("segment sample times must be finite and strictly increasing")]
    NonMonotonicSamples,

    #[error("state vector has zero norm")]
    ZeroNormState,

    #[error("pulse train must contain at least one pulse")]
    EmptyPulseTrain,
}
