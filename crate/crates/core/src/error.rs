use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial syntax: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: ray index {index} out of range 1..{n}")]
    IndexOutOfRange { line: usize, index: i64, n: usize },
    #[error("line {line}: non-primitive ray {ray:?}")]
    NonPrimitiveRay { line: usize, ray: Vec<i64> },
    #[error("line {line}: zero ray")]
    ZeroRay { line: usize },
    #[error("invalid fan: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("ray matrix has rank {rank} < {dim}; the fan is not complete")]
    RankDeficient { rank: usize, dim: usize },
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("grading class has shape ({free}, {torsion}), expected ({want_free}, {want_torsion})")]
    ClassShape {
        free: usize,
        torsion: usize,
        want_free: usize,
        want_torsion: usize,
    },
    #[error("unbounded region for sign pattern {pattern:?}")]
    UnboundedRegion { pattern: Vec<usize> },
    #[error("integer overflow in lattice computation")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("presentation is not fine-graded")]
    Ungraded,
    #[error("relation {0} is not homogeneous with respect to the generator shifts")]
    Inhomogeneous(usize),
    #[error("resolution did not terminate within {0} steps")]
    NoTermination(usize),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("cohomological index {p} outside 0..={n}")]
    IndexOutOfRange { p: usize, n: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
