use core::fmt;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested field or table size exceeds the capability cap.
    TooLarge { n: u32, max_n: u32 },
    /// A reduction polynomial failed the irreducibility test.
    NotIrreducible { poly: u64 },
    /// A polynomial override has the wrong degree or a zero constant term.
    InvalidPolynomial { poly: u64, degree: u32 },
    DivisionByZero,
    /// The element does not lie in the subfield GF(2^m).
    NotInSubfield,
    /// The element lies in the subfield but the operation needs it outside.
    InSubfield,
    ZeroMu,
    /// `λ` does not satisfy `λ + λ^(2^m) = 1`.
    InvalidLambda,
    DimensionMismatch { left: u32, right: u32 },
    /// A spectrum distribution holds a value outside the theorem's set.
    UnexpectedValue(i64),
    /// No `μ` with the requested Kloosterman value exists at this `m`.
    NoSuchMu { m: u32, target: i64 },
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooLarge { n, max_n } => {
                write!(f, "n = {n} exceeds the capability cap max_n = {max_n}")
            }
            Error::NotIrreducible { poly } => write!(f, "polynomial {poly:#x} is not irreducible"),
            Error::InvalidPolynomial { poly, degree } => write!(
                f,
                "polynomial {poly:#x} must have degree {degree} and constant term 1"
            ),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotInSubfield => f.write_str("element is not in the subfield GF(2^m)"),
            Error::InSubfield => f.write_str("element lies in the subfield GF(2^m)"),
            Error::ZeroMu => f.write_str("mu must be nonzero"),
            Error::InvalidLambda => f.write_str("lambda must satisfy lambda + lambda^(2^m) = 1"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right} variables")
            }
            Error::UnexpectedValue(v) => write!(f, "unexpected spectrum value {v}"),
            Error::NoSuchMu { m, target } => {
                write!(f, "no mu in GF(2^{m})* with Kloosterman sum {target}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
