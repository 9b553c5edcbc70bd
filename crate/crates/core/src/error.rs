use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("factorization incomplete: effort bound exceeded on {0}")]
    FactorizationIncomplete(String),
    #[error("moduli are not pairwise coprime: {0}")]
    NonCoprimeModuli(String),
    #[error("polynomials are not coprime: common factor {0}")]
    NotCoprime(String),
    #[error("{0} is not an element of the ring")]
    NotInRing(String),
    #[error("operation `{op}` is not available over {ring}")]
    UnsupportedBackend { op: &'static str, ring: String },
    #[error("polynomial is not integrally valued: {0}")]
    NotIntegrallyValued(String),
    #[error("polynomial is not totally primitive: gcd of its values is {gcd}")]
    NotTotallyPrimitive { gcd: String },
    #[error("polynomial has non-integral coefficients")]
    NonIntegerCoefficients,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("hypothesis violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search budget of {budget} candidates exhausted during {stage}")]
    SearchBudgetExhausted { stage: String, budget: u64 },
    #[error("certificate rejected by the independent verifier: {0}")]
    CertificateRejected(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for mathematical hypothesis violations (as opposed to effort
    /// exhaustion or malformed input).
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::NotCoprime(_)
                | Error::NotInRing(_)
                | Error::NotIntegrallyValued(_)
                | Error::NotTotallyPrimitive { .. }
                | Error::NonIntegerCoefficients
                | Error::Precondition(_)
                | Error::NonCoprimeModuli(_)
                | Error::ZeroInput
                | Error::UnsupportedBackend { .. }
        )
    }

    pub fn is_effort_exhausted(&self) -> bool {
        matches!(
            self,
            Error::FactorizationIncomplete(_)
                | Error::SearchBudgetExhausted { .. }
                | Error::DegreeCapExceeded { .. }
        )
    }
}
