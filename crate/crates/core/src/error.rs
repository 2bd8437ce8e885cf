//! One error type for the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // ---- raster I/O ----
    #[error("malformed raster header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: String },
    #[error("unsupported max value {max_value} at byte {offset}: only 8-bit rasters (max 255) are accepted")]
    UnsupportedMaxValue { offset: usize, max_value: u64 },
    #[error("truncated payload at byte {offset}: {detail}")]
    TruncatedPayload { offset: usize, detail: String },
    #[error("malformed payload at byte {offset}: {reason}")]
    MalformedPayload { offset: usize, reason: String },
    #[error("intensity {value} at pixel index {index} is outside [0, 255]")]
    OutOfRangeIntensity { index: usize, value: f64 },
    #[error("invalid image: {reason}")]
    InvalidImage { reason: String },
    #[error("coordinate ({x}, {y}) is outside the {width}x{height} interpolation domain")]
    CoordinateOutOfBounds {
        x: f64,
        y: f64,
        width: usize,
        height: usize,
    },
    #[error("empty input")]
    EmptyInput,

    // ---- descriptors ----
    #[error("image {width}x{height} is too small for margin {margin}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        margin: usize,
    },
    #[error("sampling ring of radius {radius} around ({cx}, {cy}) leaves the image")]
    OutOfBoundsRing { cx: usize, cy: usize, radius: f64 },
    #[error("unsupported sample count {points}: {reason}")]
    UnsupportedP { points: u32, reason: &'static str },
    #[error("mapping built for {expected} samples applied to codes computed with {got}")]
    MappingMismatch { expected: u32, got: u32 },
    #[error("grid {gx}x{gy} leaves an empty window on a {interior_width}x{interior_height} code interior")]
    EmptyWindow {
        gx: usize,
        gy: usize,
        interior_width: usize,
        interior_height: usize,
    },
    #[error("volume {width}x{height}x{frames} is too small for margins ({mx}, {my}, {mt})")]
    VolumeTooSmall {
        width: usize,
        height: usize,
        frames: usize,
        mx: usize,
        my: usize,
        mt: usize,
    },

    // ---- learning ----
    #[error("split ratios {ratios:?} are invalid: {reason}")]
    BadRatios { ratios: [f64; 3], reason: &'static str },
    #[error("cannot fit on an empty training set")]
    EmptyTrainingSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("length mismatch: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("histogram intersection requires inputs normalized to sum 1 (sums {sum_a} and {sum_b})")]
    UnnormalizedIntersection { sum_a: f64, sum_b: f64 },
    #[error("need at least {needed} training samples, got {got}")]
    InsufficientTrainingData { needed: usize, got: usize },
    #[error("k = {k} exceeds the {distinct} distinct points available")]
    KTooLarge { k: usize, distinct: usize },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("requested {requested} components, only {available} available")]
    TooManyComponents { requested: usize, available: usize },
    #[error("distance matrix row {row} has length {len}, expected {expected}")]
    NonSquareDistances {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("distance matrix is asymmetric at ({i}, {j}): {a} vs {b}")]
    AsymmetricDistances { i: usize, j: usize, a: f64, b: f64 },
    #[error("distance matrix diagonal entry {i} is {value}, expected 0")]
    NonzeroDiagonal { i: usize, value: f64 },

    // ---- evaluation ----
    #[error("scores must include at least one positive and one negative sample")]
    DegenerateClassDistribution,
    #[error("scores must include at least one positive sample")]
    NoPositiveSamples,

    // ---- tabular I/O ----
    #[error("{context}, line {line}: {reason}")]
    CsvData {
        context: &'static str,
        line: u64,
        reason: String,
    },

    // ---- misc precondition violations ----
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
