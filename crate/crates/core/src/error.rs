use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic mixes Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedExtension(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("syzygy degree {r} outside 0..={max}")]
    RangeError { r: i64, max: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("curve is not reduced: {0}")]
    NotReduced(String),
    #[error("conic `{0}` is singular")]
    SingularConic(String),
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("curve has no components")]
    EmptyCurve,
    #[error("unknown component `{0}`")]
    UnknownId(String),
    #[error("cannot delete the last component `{0}`")]
    LastComponent(String),
    #[error("intersection point not representable in a quadratic extension: {0}")]
    UnrepresentablePoint(String),
    #[error("missing singular data for generic component `{0}`")]
    MissingSingularData(String),
    #[error("local algebra did not stabilize below truncation order {0}")]
    NotFiniteColength(usize),
    #[error("mu + branches - 1 is odd (mu = {mu}, branches = {branches})")]
    ParityError { mu: usize, branches: usize },
    #[error("Hilbert function did not stabilize up to degree {0}")]
    StabilizationFailure(usize),
    #[error("component `{0}` is not a line")]
    NotALine(String),
    #[error("component `{0}` is not a conic")]
    NotAConic(String),
    #[error("curve is not free")]
    NotFree,
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("scene error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
