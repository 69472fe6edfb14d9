use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code through [`Error::code`],
/// which the command-line front end forwards in its JSON envelope.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different domains: {0}")]
    DomainMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor and has no inverse: {0}")]
    NonInvertible(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("characteristic too small: {0}")]
    CharacteristicTooSmall(String),
    #[error("determinant is {0}, expected 1")]
    DeterminantNotOne(String),
    #[error("matrix is not in the requested subgroup: {0}")]
    NonMember(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("enumeration of {0} elements exceeds the cap of {1}")]
    TooLarge(String, u64),
    #[error("characteristic polynomial does not split over the base field")]
    NonSplitCharPoly,
    #[error("operation not supported over this domain: {0}")]
    UnsupportedDomain(String),
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("matrix is not a similitude of the form")]
    NotSimilitude,
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("Weyl group closure exceeded {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("not a simple system: {0}")]
    NotSimpleSystem(String),
    #[error("weight extraction failed: {0}")]
    WeightExtractionFailure(String),
    #[error("quaternion elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("splitting test not supported over {0}")]
    UnsupportedBase(String),
    #[error("vector is not a pure quaternion")]
    NotPure,
    #[error("quaternion does not have unit norm (norm {0})")]
    NotUnit(String),
    #[error("point is not in the upper half plane")]
    NotUpperHalfPlane,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
}

impl Error {
    /// Stable snake_case identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DomainMismatch(_) => "domain_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::NonInvertible(_) => "non_invertible",
            Error::ZeroInput => "zero_input",
            Error::NotPrime(_) => "not_prime",
            Error::NotOddPrime(_) => "not_odd_prime",
            Error::InvalidField(_) => "invalid_field",
            Error::Parse(_) => "parse_error",
            Error::NonSquare(..) => "non_square",
            Error::SizeMismatch(_) => "size_mismatch",
            Error::Singular => "singular",
            Error::NotNilpotent => "not_nilpotent",
            Error::CharacteristicTooSmall(_) => "characteristic_too_small",
            Error::DeterminantNotOne(_) => "determinant_not_one",
            Error::NonMember(_) => "non_member",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::TooLarge(..) => "too_large",
            Error::NonSplitCharPoly => "non_split_char_poly",
            Error::UnsupportedDomain(_) => "unsupported_domain",
            Error::IndexError(_) => "index_error",
            Error::NotSimilitude => "not_similitude",
            Error::InvalidRank(_) => "invalid_rank",
            Error::ClosureBoundExceeded(_) => "closure_bound_exceeded",
            Error::NotSimpleSystem(_) => "not_simple_system",
            Error::WeightExtractionFailure(_) => "weight_extraction_failure",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::UnsupportedBase(_) => "unsupported_base",
            Error::NotPure => "not_pure",
            Error::NotUnit(_) => "not_unit",
            Error::NotUpperHalfPlane => "not_upper_half_plane",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::NotOrthogonal => "not_orthogonal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
