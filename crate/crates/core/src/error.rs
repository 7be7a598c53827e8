use thiserror::Error;

/// Errors raised by the field, code and concatenation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime characteristic")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("modulus has degree {found}, expected monic of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("field too large for this operation: {0}")]
    FieldTooLarge(String),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no embedding of F_{sub} into F_{sup}")]
    NoEmbedding { sub: String, sup: String },
    #[error("element does not lie in the embedded subfield")]
    NotInSubfield,
    #[error("no primitive {k}-th root of unity exists in characteristic {p}")]
    RootObstruction { k: u64, p: u64 },
    #[error("elements do not form a basis over the subfield")]
    NotABasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("off-diagonal entry b must be nonzero for n >= 2")]
    ZeroOffDiagonal,
    #[error("generator matrix does not have full row rank")]
    RankDeficientGenerator,
    #[error("enumeration needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("coefficients do not define an isometry")]
    NotAnIsometry,
    #[error("isometry length {n} is shorter than the extension degree {s}")]
    LengthTooShort { n: usize, s: usize },
    #[error("outer code is not LCD: a lies in the forbidden set")]
    OuterNotLcd,
    #[error("concatenated code failed its LCD certificate (hull dimension {0})")]
    LcdCertificateFailed(usize),
    #[error("no isometry found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
