use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(String, String),
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("polynomial is not a perfect {0}-th power")]
    NotAPower(u32),
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("all components are zero")]
    AllZero,
    #[error("components share the common factor {0}")]
    CommonFactor(String),
    #[error("zero input form")]
    ZeroInput,
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("forms have unequal t-degrees {0} and {1}")]
    UnequalTDegrees(usize, usize),
    #[error("cross product of the mu-basis is not proportional to the parametrization")]
    CrossProductFailure,
    #[error("form is not a combination of the mu-basis")]
    NoDecomposition,
    #[error("tracing index estimate did not stabilize")]
    Unstable,
    #[error("resultant vanishes identically; the image is degenerate")]
    DegenerateImage,
    #[error("no tracing index divisor of {0} yields an exact root")]
    RootFailure(usize),
    #[error("determinant {0} is not a constant multiple of the implicit equation")]
    NotImplicit(String),
    #[error("determinant vanishes identically")]
    ZeroDeterminant,
    #[error("form does not vanish on the parametrization")]
    NotMovingCurve,
    #[error("box ({0},{1}) is too small: {2}")]
    BoxTooSmall(usize, usize, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeMismatch(..) => "DEGREE-MISMATCH",
            Error::BothZero => "BOTH-ZERO",
            Error::NotAPower(_) => "NOT-A-POWER",
            Error::NotDivisible(_) => "NOT-DIVISIBLE",
            Error::AllZero => "ZERO",
            Error::CommonFactor(_) => "COMMON-FACTOR",
            Error::ZeroInput => "ZERO-INPUT",
            Error::NonSquare(..) => "NON-SQUARE",
            Error::UnequalTDegrees(..) => "UNEQUAL-T-DEGREES",
            Error::CrossProductFailure => "CROSS-PRODUCT-FAILURE",
            Error::NoDecomposition => "NO-DECOMPOSITION",
            Error::Unstable => "UNSTABLE",
            Error::DegenerateImage => "DEGENERATE-IMAGE",
            Error::RootFailure(_) => "ROOT-FAILURE",
            Error::NotImplicit(_) => "NOT-IMPLICIT",
            Error::ZeroDeterminant => "ZERO-DETERMINANT",
            Error::NotMovingCurve => "NOT-MOVING-CURVE",
            Error::BoxTooSmall(..) => "BOX-TOO-SMALL",
            Error::InvalidField(_) => "INVALID-FIELD",
            Error::InvalidInput(_) => "INVALID-INPUT",
        }
    }

    /// Errors that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CrossProductFailure | Error::Unstable | Error::RootFailure(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
