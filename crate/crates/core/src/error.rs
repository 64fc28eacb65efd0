use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("d^2 != 0 on generator {generator}: residual {residual}")]
    JacobiViolation { generator: String, residual: String },

    #[error("d{generator} has a nonzero (0,2)-component {component}")]
    NotIntegrable { generator: String, component: String },

    #[error("J^2 != -Id")]
    NotAlmostComplex,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a form must have a single total degree (found degrees {0} and {1})")]
    MixedDegree(usize, usize),

    #[error("metric matrix is not skew-Hermitian at entry ({0}, {1})")]
    NotSkewHermitian(usize, usize),

    #[error("metric is not positive definite")]
    NotPositive,

    #[error("k = {k} is out of range 1..={max}")]
    BadK { k: usize, max: usize },

    #[error("t = {0} is outside (0, 1]")]
    BadT(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    #[error("index out of range: {0}")]
    BadRange(String),

    #[error("contact data is not quasi-Sasakian: {0}")]
    NotQuasiSasakian(String),

    #[error("bad number `{0}`")]
    BadNumber(String),

    #[error("singular linear system")]
    Singular,

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
