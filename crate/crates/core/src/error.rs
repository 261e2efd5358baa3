use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("roots outside the coefficient field: {0}")]
    RootsOutsideField(String),
    #[error("chosen roots do not span a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("degenerate torus parameter: b must be nonzero")]
    DegenerateParameter,
    #[error("not a complex structure: {0}")]
    NotComplexStructure(String),
    #[error("integrability fails: d{0} has a (0,2) component")]
    Integrability(String),
    #[error("generator count mismatch: {0} vs {1}")]
    MismatchedN(usize, usize),
    #[error("bidegree mismatch: {0}")]
    Bidegree(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("metric is not positive definite")]
    NotPositive,
    #[error("positivity lost at t = {t} after {halvings} step halvings")]
    PositivityLoss { t: f64, halvings: u32 },
    #[error("unsupported structure: {0}")]
    Structure(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
