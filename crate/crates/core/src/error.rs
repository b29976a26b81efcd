use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inversion of zero")]
    ZeroInverse,

    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("minimal polynomial must be monic of degree >= 1: {0}")]
    InvalidField(String),

    #[error("non-exact division: remainder {remainder}")]
    NonExactDivision { remainder: String },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("not homogeneous: degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<i64> },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambiguous weights: {0}")]
    AmbiguousWeights(String),

    #[error("not quasi-homogeneous: {0}")]
    NotQuasiHomogeneous(String),

    #[error("invalid weights ({0}, {1}): must be positive and coprime")]
    InvalidWeights(i64, i64),

    #[error("not reduced: {0}")]
    NotReduced(String),

    #[error("root not in field: {0}")]
    RootNotInField(String),

    #[error("b_i not in field: {0}")]
    BNotInField(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("derivation does not preserve (f): {0}")]
    NotADerivation(String),

    #[error("inconsistent extension on branch {branch}: {detail}")]
    InconsistentExtension { branch: usize, detail: String },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("element is not homogeneous")]
    NonHomogeneousElement,

    #[error("operator leaves the free cover at entry ({branch}, {index})")]
    LeavesCover { branch: usize, index: usize },

    #[error("verification of {property} failed: {detail}")]
    VerificationFailed { property: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported catalog label: {0}")]
    UnknownLabel(String),

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error reflects a broken invariant of the library rather
    /// than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Internal(_)
                | Error::InconsistentExtension { .. }
                | Error::Catalog(_)
                | Error::VerificationFailed { .. }
        )
    }
}
