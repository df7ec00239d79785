use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision must be positive (got {0})")]
    InvalidPrecision(usize),
    #[error("series carry different moduli ({0} vs {1})")]
    ModulusMismatch(String, String),
    #[error("constant term {0} is not a unit")]
    NotInvertible(String),
    #[error("square root needs constant term 1 (got {0})")]
    BadLeadingTerm(String),
    #[error("square root leaves the integers at q^{0}")]
    NotIntegralSqrt(usize),
    #[error("inner series of a composition must have valuation >= 1")]
    CompositionDiverges,
    #[error("series is not revertible: {0}")]
    NotRevertible(String),
    #[error("index {index} is beyond the computed precision {prec}")]
    PrecisionExceeded { index: usize, prec: usize },
    #[error("eta quotient cannot be expanded: {0}")]
    NotExpandable(String),
    #[error("unknown form {0:?}")]
    UnknownForm(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("unknown verification family {0:?}")]
    UnknownFamily(String),
    #[error("dimension formula needs odd weight (got {0})")]
    UnsupportedWeight(i64),
    #[error("{0} is not a sum of two squares")]
    NoRepresentation(u64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("non-exact division: {0}")]
    InexactDivision(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
