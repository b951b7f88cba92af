use thiserror::Error;

/// Everything that can go wrong while building or checking a code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field GF({p}^{e}) has more than 2^32 elements")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("no primitive polynomial of degree {e} over GF({p})")]
    NoPrimitivePolynomial { p: u64, e: u32 },
    #[error("operation requires a field of even extension degree (GF(q^2)), got GF({p}^{e})")]
    NotQuadraticField { p: u32, e: u32 },
    #[error("zero element where a nonzero one is required: {0}")]
    ZeroElement(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("divisibility violated: {0}")]
    Divisibility(String),
    #[error("{family}: r = {r} outside window [{lo}, {hi}]")]
    Window { family: String, r: i64, lo: i64, hi: i64 },
    #[error("x = {0} does not split on the curve")]
    NotSplitting(u32),
    #[error("evaluation point {0} appears more than once")]
    DuplicatePoint(u32),
    #[error("cosets overlap: {0}")]
    OverlappingCosets(String),

    #[error("residues are not co-aligned ({mode}): position {index} is in a different class than position 0")]
    MixedClass { mode: &'static str, index: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("code is not Hermitian self-orthogonal")]
    NotHermitianSelfOrthogonal,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by out-of-range or inconsistent family parameters.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::NotPrimePower(_)
                | Error::FieldTooLarge { .. }
                | Error::InvalidParameter(_)
                | Error::Divisibility(_)
                | Error::Window { .. }
                | Error::NotSplitting(_)
                | Error::DuplicatePoint(_)
                | Error::OverlappingCosets(_)
        )
    }
}
