use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid node {index} at ({x}, {y}) lies on the singular set of the generator")]
    SingularNode { index: usize, x: f64, y: f64 },
    #[error("test function support is not inside the admissible interior: {0}")]
    SupportOverflow(String),
    #[error("unresolvable mollifier: eps = {eps} < 2h = {min}")]
    UnresolvableMollifier { eps: f64, min: f64 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("under-resolved loop: step {step} has |du| = {jump} >= sqrt(2)")]
    UnderResolvedLoop { step: usize, jump: f64 },
    #[error("seed ({x}, {y}) outside domain")]
    SeedOutsideDomain { x: f64, y: f64 },
    #[error("unit-length violation at node {index}: ||u| - 1| = {deviation:e}")]
    NotUnit { index: usize, deviation: f64 },
    #[error("smooth Burgers generator past breaking time: t = {t} >= {breaking}")]
    PastBreakingTime { t: f64, breaking: f64 },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("value count mismatch: expected {expected}, found {found}")]
    ValueCountMismatch { expected: usize, found: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
