use thiserror::Error;

/// Errors raised while building filtrations, reducing them, or summarizing
/// the resulting barcodes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("point {point} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {point} has a non-finite coordinate")]
    NonFinite { point: usize },
    #[error("radius threshold must be finite and non-negative, got {0}")]
    InvalidRadius(f64),
    #[error("point clouds use different metrics")]
    MetricMismatch,
    #[error(
        "precomputed distances cannot be combined across clouds; select A and B inside one matrix"
    )]
    PrecomputedPair,
    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),
    #[error("index {index} out of range for a cloud of {len} points")]
    PointIndex { index: usize, len: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate cell id {0}")]
    DuplicateId(usize),
    #[error("cell ids must be exactly 1..={n}")]
    NonContiguousIds { n: usize },
    #[error("cell {cell} lists face {face}, which does not precede it")]
    ForwardReference { cell: usize, face: usize },
    #[error("cell {cell} lists unknown face {face}")]
    UnknownFace { cell: usize, face: usize },
    #[error("cell {cell} has dimension {dim} but face {face} has dimension {face_dim}")]
    FaceDimension {
        cell: usize,
        dim: usize,
        face: usize,
        face_dim: usize,
    },
    #[error("cell {cell} enters before its face {face} by value")]
    FaceValue { cell: usize, face: usize },
    #[error("filtration values decrease at cell {cell}")]
    NonMonotoneValue { cell: usize },
    #[error("cell {cell} has a non-finite filtration value")]
    NonFiniteValue { cell: usize },
    #[error("L-cell {cell} has face {face} outside L")]
    NotSubcomplex { cell: usize, face: usize },
    #[error("unknown cell id {0}")]
    UnknownCell(usize),

    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("bar has an infinite endpoint and no clamp value is set")]
    UnclampedInfinity,
    #[error("clamp value {clamp} is below finite bar endpoint {value}")]
    ClampBelowValue { clamp: f64, value: f64 },
    #[error("bar has zero persistence")]
    ZeroPersistence,

    #[error("filtration has {cells} cells, above the oracle limit of {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("rank function yields negative multiplicity for interval [{birth}, {death})")]
    NegativeMultiplicity { birth: usize, death: usize },

    #[error("labels: {0}")]
    Labels(String),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("series: {0}")]
    Series(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
