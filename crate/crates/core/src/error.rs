use crate::datum::Hypothesis;

/// Errors produced by the library.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("kernel basis vectors are linearly dependent")]
    KernelDependent,

    #[error("kernel basis does not span a saturated sublattice (quotient has torsion)")]
    KernelNotSaturated,

    #[error("covector does not annihilate the kernel, so its pairing is not defined on classes")]
    CovectorNotWellDefined,

    #[error("{0} is not an element of the kernel lattice")]
    NotInKernel(String),

    #[error("group datum fails hypothesis {0}")]
    HypothesisFailed(Hypothesis),

    #[error("unsupported group datum: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Weyl group has {size} elements, above the enumeration cap of {cap}")]
    EnumerationCap { size: u128, cap: usize },

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a request outside an operation's stated
    /// hypothesis range (as opposed to malformed input or unsupported data).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
