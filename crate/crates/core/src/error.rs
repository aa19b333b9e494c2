use thiserror::Error;

/// Broad category of an [`AlgebraError`], used by front ends to pick exit
/// codes and machine-readable error codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    /// Malformed input: bad text, wrong shapes, inhomogeneous data.
    Input,
    /// Well-formed input on which the requested invariant is undefined
    /// (infinite lengths, incompatible supports).
    Incompatible,
    /// A configured size limit was hit.
    Capacity,
    /// An internal consistency check failed.
    Internal,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {0} exceeds the supported word size")]
    ModulusTooLarge(u64),

    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("inhomogeneous {0}")]
    Inhomogeneous(String),

    #[error("the ideal is the unit ideal")]
    UnitIdeal,

    #[error("not a complex: d_{degree_below} * d_{degree} is nonzero at row {row}, column {col}")]
    NotAComplex {
        degree: i64,
        degree_below: i64,
        row: usize,
        col: usize,
    },

    #[error("homology in degree {degree} has infinite length; the pair is not in C(m)")]
    InfiniteLength { degree: i64 },

    #[error("incompatible pair: {0}")]
    Incompatible(String),

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("table has {have} entries but {need} are required")]
    InsufficientTable { have: usize, need: usize },

    #[error("decomposition of order {u} does not reproduce the tabulated value at e = {e}")]
    ReconstructionMismatch { u: usize, e: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl AlgebraError {
    pub fn class(&self) -> ErrorClass {
        use AlgebraError::*;
        match self {
            NotPrime(_) | ModulusTooLarge(_) | Structural(_) | Parse { .. } | Inhomogeneous(_)
            | UnitIdeal | NotAComplex { .. } | InsufficientTable { .. } => ErrorClass::Input,
            InfiniteLength { .. } | Incompatible(_) | ReconstructionMismatch { .. } => {
                ErrorClass::Incompatible
            }
            ExponentOverflow(_) | Capacity(_) => ErrorClass::Capacity,
            Invariant(_) => ErrorClass::Internal,
        }
    }

    /// Stable snake-case identifier of the variant.
    pub fn code(&self) -> &'static str {
        use AlgebraError::*;
        match self {
            NotPrime(_) => "not_prime",
            ModulusTooLarge(_) => "modulus_too_large",
            Structural(_) => "structural",
            Parse { .. } => "parse",
            Inhomogeneous(_) => "inhomogeneous",
            UnitIdeal => "unit_ideal",
            NotAComplex { .. } => "not_a_complex",
            InfiniteLength { .. } => "infinite_length",
            Incompatible(_) => "incompatible",
            ExponentOverflow(_) => "exponent_overflow",
            Capacity(_) => "capacity",
            InsufficientTable { .. } => "insufficient_table",
            ReconstructionMismatch { .. } => "reconstruction_mismatch",
            Invariant(_) => "internal",
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
