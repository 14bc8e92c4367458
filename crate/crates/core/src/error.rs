use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The matrix is not a generalized Cartan matrix.
    NotGcm(String),
    /// The matrix is a GCM but not of affine type.
    NotAffine(String),
    IndexOutOfRange { index: usize, rank: usize },
    /// The winding parameter shares a factor with `a_0`.
    NotCoprime { u: i64, a0: i64 },
    NonPositive(i64),
    /// Vectors of different length were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// Straightening exceeded its step budget.
    NotInTitsCone { steps: usize },
    NotStrictlyDominant,
    NotDominantIntegral,
    NotDominant,
    NotPositiveLevel,
    TwistedUnsupported,
    CutoffUnstable { before: i128, after: i128 },
    LevelMismatch { expected: String, found: String },
    DominantInput,
    /// No dotted simple root attains the value -1 along the path.
    PartnerUndefined,
    InconsistentTruncation(String),
    /// A signed sum that must be a nonnegative integer was not.
    NegativeMultiplicity(i128),
    Overflow,
    Parse(String),
}

impl Error {
    /// Stable identifier used in diagnostics and exit messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotGcm(_) => "NotGCM",
            Error::NotAffine(_) => "NotAffine",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NonPositive(_) => "NonPositive",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInTitsCone { .. } => "NotInTitsCone",
            Error::NotStrictlyDominant => "NotStrictlyDominant",
            Error::NotDominantIntegral => "NotDominantIntegral",
            Error::NotDominant => "NotDominant",
            Error::NotPositiveLevel => "NotPositiveLevel",
            Error::TwistedUnsupported => "TwistedUnsupported",
            Error::CutoffUnstable { .. } => "CutoffUnstable",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::DominantInput => "DominantInput",
            Error::PartnerUndefined => "PartnerUndefined",
            Error::InconsistentTruncation(_) => "InconsistentTruncation",
            Error::NegativeMultiplicity(_) => "NegativeMultiplicity",
            Error::Overflow => "Overflow",
            Error::Parse(_) => "Parse",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            Error::NotGcm(why) | Error::NotAffine(why) => write!(f, "{name}: {why}"),
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "{name}: index {index} with {rank} simple roots")
            }
            Error::NotCoprime { u, a0 } => write!(f, "{name}: gcd({u}, a_0 = {a0}) != 1"),
            Error::NonPositive(u) => write!(f, "{name}: u = {u} must be positive"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "{name}: expected {expected} entries, found {found}")
            }
            Error::NotInTitsCone { steps } => {
                write!(f, "{name}: no dominant representative after {steps} reflections")
            }
            Error::CutoffUnstable { before, after } => {
                write!(f, "{name}: value changed from {before} to {after} on a larger budget")
            }
            Error::LevelMismatch { expected, found } => {
                write!(f, "{name}: expected level {expected}, found {found}")
            }
            Error::InconsistentTruncation(why) => write!(f, "{name}: {why}"),
            Error::NegativeMultiplicity(v) => write!(f, "{name}: signed sum evaluated to {v}"),
            Error::Parse(why) => write!(f, "{name}: {why}"),
            _ => f.write_str(name),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
