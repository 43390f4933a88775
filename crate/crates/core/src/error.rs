use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by construction and bound computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input length {n} outside supported range 1..={cap}")]
    LengthCap { n: usize, cap: usize },

    #[error("domain size {size} exceeds dense-matrix cap {cap}")]
    DomainCap { size: usize, cap: usize },

    #[error("invalid function definition: {0}")]
    BadFunction(String),

    #[error("input {0:#b} not in the function domain")]
    OutsideDomain(u128),

    #[error("composition arity mismatch: outer takes {expected} bits, got {got} inner functions")]
    ArityMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("index {index} out of range 1..={n}")]
    IndexRange { index: usize, n: usize },

    #[error("matrix is not a valid adversary matrix: {0}")]
    BadGamma(String),

    #[error("invalid matrix: {0}")]
    BadMatrix(String),

    #[error("all masked matrices are zero; the bound is undefined for this matrix")]
    DegenerateGamma,

    #[error("power iteration did not converge: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("relation is empty or has an empty row/column")]
    BadRelation,

    #[error("weight scheme invalid at (x={x}, y={y}, i={i}): {msg}")]
    BadScheme { x: u128, y: u128, i: usize, msg: String },

    #[error("probability schedule invalid for input {input:#b}: {msg}")]
    BadSchedule { input: u128, msg: String },

    #[error("entrywise factorization mismatch at ({row},{col}): product differs from target by {diff:.3e}")]
    FactorizationMismatch { row: usize, col: usize, diff: f64 },

    #[error("operation requires boolean output (m = 1), function has m = {0}")]
    NonBooleanOutput(usize),

    #[error("block sensitivity is zero; no sensitive block exists")]
    ZeroBlockSensitivity,

    #[error("cost vector must be strictly positive at index {0}")]
    NonPositiveCost(usize),

    #[error("linear program solver failed: {0}")]
    Solver(String),

    #[error("function is not symmetric: inputs {x:#b} and {y:#b} have equal weight but different outputs")]
    NotSymmetric { x: u128, y: u128 },

    #[error("quantum state/operator dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not unitary: max deviation {0:.3e}")]
    NotUnitary(f64),

    #[error("state norm drifted to {0}; operations must preserve the unit norm")]
    NormDrift(f64),

    #[error("simulator check failed: {0}")]
    CheckFailed(String),

    #[error("operation unsupported for this matrix representation: {0}")]
    Unsupported(String),
}
