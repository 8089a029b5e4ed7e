//! Error type shared by every module of the toolkit.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while constructing, reducing, or verifying sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two field elements from different quotient rings were combined.
    MixedFields,
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// A nonzero element was required (e.g. for a multiplicative order).
    ZeroElement,
    /// Discrete logarithm of zero requested.
    ZeroTarget,
    /// Discrete-log base does not generate the whole unit group.
    NonPrimitiveBase,
    /// A construction parameter (θ or β) is not a primitive element.
    NonPrimitive,
    /// θ is not a primitive root modulo p.
    NonPrimitiveRoot { theta: u64, p: u64 },
    /// A value that must be prime is not.
    NotPrime { value: u64 },
    /// The modulus polynomial is not irreducible over F_p.
    NotIrreducible { p: u64, modulus: Vec<u64> },
    /// Catch-all for malformed arguments (shape, range, consistency).
    InvalidParameter(String),
    /// h is below the construction's minimum.
    BadDegree { h: u64, min: u64 },
    /// β lies in the base subfield, so it generates no extension.
    DegreeOne,
    /// x − s is not a unit because p(s) = 0.
    RootInS { s: u64 },
    /// g fails the divisibility a reduction requires.
    DivisibilityViolation { g: u64, must_divide: u64 },
    /// No proper divisor k of h satisfies g | q^k − 1.
    NoValidSubfieldCondition { q: u64, h: u64, g: u64 },
    /// Chinese remainder combination of non-coprime moduli.
    NotCoprime { m: u64, n: u64 },
    /// Element or set fed to an operation over a different group.
    WrongGroup,
    /// An enumeration exceeds the configured cap.
    TooLarge { size: u128, cap: u128 },
    /// The verifier was handed an empty set.
    EmptySet,
    /// A reduction that must preserve cardinality collapsed the set.
    CardinalityLost { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedFields => write!(f, "elements belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroElement => write!(f, "the zero element has no multiplicative order"),
            Error::ZeroTarget => write!(f, "discrete logarithm of zero is undefined"),
            Error::NonPrimitiveBase => write!(f, "discrete-log base is not primitive"),
            Error::NonPrimitive => write!(f, "element is not primitive"),
            Error::NonPrimitiveRoot { theta, p } => {
                write!(f, "{theta} is not a primitive root modulo {p}")
            }
            Error::NotPrime { value } => write!(f, "{value} is not prime"),
            Error::NotIrreducible { p, modulus } => {
                write!(f, "modulus {modulus:?} is reducible over F_{p}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::BadDegree { h, min } => write!(f, "h = {h} is below the minimum {min}"),
            Error::DegreeOne => write!(f, "element has degree 1 over the base subfield"),
            Error::RootInS { s } => write!(f, "p({s}) = 0, so x - {s} is not a unit"),
            Error::DivisibilityViolation { g, must_divide } => {
                write!(f, "g = {g} does not divide {must_divide}")
            }
            Error::NoValidSubfieldCondition { q, h, g } => {
                write!(f, "no proper divisor k of h = {h} has g = {g} dividing {q}^k - 1")
            }
            Error::NotCoprime { m, n } => write!(f, "moduli {m} and {n} are not coprime"),
            Error::WrongGroup => write!(f, "element does not belong to the expected group"),
            Error::TooLarge { size, cap } => {
                write!(f, "enumeration of size {size} exceeds the cap {cap}")
            }
            Error::EmptySet => write!(f, "the set is empty"),
            Error::CardinalityLost { expected, got } => {
                write!(f, "image has {got} elements, expected {expected}")
            }
        }
    }
}

impl std::error::Error for Error {}
