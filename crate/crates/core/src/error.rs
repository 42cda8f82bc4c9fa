use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("enumeration budget exceeded: {0}")]
    EnumerationBudgetExceeded(String),
    #[error("index {0} outside the arity")]
    IndexOutOfArity(usize),
    #[error("irreducibility could not be certified: {0}")]
    UncertifiedIrreducibility(String),
    #[error("characteristic p with unbounded arity")]
    InfiniteCharPOrbit,
    #[error("not maximal: {0}")]
    NotMaximal(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("infinite dimension: {0}")]
    InfiniteDimension(String),
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("orbit is degenerate")]
    DegenerateOrbit,
    #[error("not a skeleton object: {0}")]
    NotASkeletonObject(String),
    #[error("not principal: {0}")]
    NotPrincipal(String),
    #[error("quotient is not finite-dimensional: {0}")]
    QuotientNotFiniteDimensional(String),
    #[error("wrong break order: expected {expected}, found {found}")]
    WrongBreakOrder { expected: usize, found: usize },
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::FieldMismatch => "FieldMismatch",
            Error::EnumerationBudgetExceeded(_) => "EnumerationBudgetExceeded",
            Error::IndexOutOfArity(_) => "IndexOutOfArity",
            Error::UncertifiedIrreducibility(_) => "UncertifiedIrreducibility",
            Error::InfiniteCharPOrbit => "InfiniteCharPOrbit",
            Error::NotMaximal(_) => "NotMaximal",
            Error::ObjectMismatch(_) => "ObjectMismatch",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::InfiniteDimension(_) => "InfiniteDimension",
            Error::WrongCharacteristic(_) => "WrongCharacteristic",
            Error::DegenerateOrbit => "DegenerateOrbit",
            Error::NotASkeletonObject(_) => "NotASkeletonObject",
            Error::NotPrincipal(_) => "NotPrincipal",
            Error::QuotientNotFiniteDimensional(_) => "QuotientNotFiniteDimensional",
            Error::WrongBreakOrder { .. } => "WrongBreakOrder",
            Error::RelationViolation(_) => "RelationViolation",
            Error::Unsupported(_) => "Unsupported",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Input that does not match a schema, as opposed to a mathematical failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
