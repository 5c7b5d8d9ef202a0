use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported modulus p = {0} (only p = 2 and p = 3 are Euclidean here)")]
    UnsupportedModulus(u32),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("diagram has {0} components, a knot is required")]
    NonKnot(usize),
    #[error("diagram is not positive (crossing {0} has sign -1)")]
    NotPositive(u32),
    #[error("unknown crossing id {0}")]
    UnknownCrossingId(u32),
    #[error("inconsistent diagram: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("not a Seifert matrix: det(V - V^T) = {0}")]
    NotASeifertMatrix(String),
    #[error("Hermitian form is near singular (min |eigenvalue| {min_abs:e} <= margin {margin:e})")]
    NearSingular { min_abs: f64, margin: f64 },
    #[error("invalid pair ({0}, {1}): need (0,0) or coprime entries")]
    InvalidPair(i64, i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("braid word is not positive")]
    NotPositive,
    #[error("closure has {0} components, not a knot")]
    NotAKnot(usize),
    #[error("closure is split: generator {0} never occurs")]
    SplitClosure(usize),
    #[error("replay mismatch at step {step}: {msg}")]
    ReplayMismatch { step: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("replay error at step {step}: {msg}")]
    ReplayError { step: usize, msg: String },
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("final Alexander polynomial is nontrivial: {0}")]
    NontrivialResult(String),
    #[error("certificate parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("checkpoint corrupt: {0}")]
    CheckpointCorrupt(String),
    #[error("checkpoint does not match task: {0}")]
    CheckpointMismatch(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
    #[error("missing column '{0}'")]
    MissingColumn(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
