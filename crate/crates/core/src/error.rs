use alloc::string::String;
use core::fmt;

use crate::numerics::NumericsError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidParameter(String),
    TruncationTooShort { needed: usize, available: usize },
    ZeroCoefficient(usize),
    ZeroDenominatorCoefficient(usize),
    /// A ball sign stayed uncertain after escalation.
    SignUnknown,
    DegreeExceedsN { degree: usize, n: usize },
    ZeroTheta,
    ZeroPolynomial,
    WrongDegree { expected: usize, found: usize },
    NotRealRooted,
    DegreeMismatch,
    NotEvenSeries,
    GammaTableTooShort { needed: usize, available: usize },
    ScalingUndefined(usize),
    TailBoundFailure,
    PrecisionExhausted,
    /// The series has transcendental coefficients and needs the ball path.
    RequiresBall,
    Numerics(NumericsError),
}

impl From<NumericsError> for Error {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::SignUnknown => Error::SignUnknown,
            e => Error::Numerics(e),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::TruncationTooShort { needed, available } => {
                write!(f, "series truncated at order {available}, need {needed}")
            }
            Error::ZeroCoefficient(n) => write!(f, "coefficient {n} is zero"),
            Error::ZeroDenominatorCoefficient(n) => {
                write!(f, "coefficient {n} is zero but appears in a denominator")
            }
            Error::SignUnknown => write!(f, "sign could not be certified"),
            Error::DegreeExceedsN { degree, n } => write!(f, "degree {degree} exceeds {n}"),
            Error::ZeroTheta => write!(f, "theta0 must be nonzero"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::WrongDegree { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            Error::NotRealRooted => write!(f, "polynomial is not real-rooted"),
            Error::DegreeMismatch => write!(f, "degrees must differ by one"),
            Error::NotEvenSeries => write!(f, "series has a nonzero odd coefficient"),
            Error::GammaTableTooShort { needed, available } => {
                write!(f, "gamma table has {available} entries, need {needed}")
            }
            Error::ScalingUndefined(n) => write!(f, "scaling undefined at index {n}"),
            Error::TailBoundFailure => write!(f, "tail bound could not be certified"),
            Error::PrecisionExhausted => write!(f, "precision cap reached"),
            Error::RequiresBall => write!(f, "series requires ball arithmetic"),
            Error::Numerics(e) => write!(f, "{e}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
