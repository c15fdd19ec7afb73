use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GarsideError {
    #[error("unknown family in system spec `{0}`")]
    UnknownFamily(String),
    #[error("rank out of range for `{0}`")]
    RankOutOfRange(String),
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("irreducible system required: the Coxeter graph is disconnected")]
    Reducible,
    #[error("Coxeter graph is not of finite type")]
    NotFiniteType,
    #[error("invalid atom {0}")]
    InvalidAtom(i64),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("elements belong to different systems")]
    MixedSystems,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("certificate failed to verify: {0}")]
    CertificateFailed(String),
    #[error("{0}")]
    NotFound(String),
}

impl GarsideError {
    /// Stable machine-readable tag used in JSON error objects and FFI status codes.
    pub fn kind(&self) -> &'static str {
        match self {
            GarsideError::UnknownFamily(_) => "unknown_family",
            GarsideError::RankOutOfRange(_) => "rank_out_of_range",
            GarsideError::MalformedMatrix(_) => "malformed_matrix",
            GarsideError::Reducible => "reducible",
            GarsideError::NotFiniteType => "not_finite_type",
            GarsideError::InvalidAtom(_) => "invalid_atom",
            GarsideError::MalformedWord(_) => "malformed_word",
            GarsideError::MixedSystems => "mixed_systems",
            GarsideError::Precondition(_) => "precondition",
            GarsideError::BudgetExceeded(_) => "budget_exceeded",
            GarsideError::CertificateFailed(_) => "certificate_failed",
            GarsideError::NotFound(_) => "not_found",
        }
    }
}

pub type Result<T, E = GarsideError> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(GarsideError::Precondition(msg.into()))
}
