use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation images {0:?} are not a bijection")]
    NotAPermutation(Vec<usize>),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the cap of {cap} elements")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,

    #[error("homomorphism is not injective")]
    NotInjective,

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("tuple entries do not commute")]
    NotCommuting,

    #[error("tuple length mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("element is not central in the group")]
    NotCentral,

    #[error("no root of unity matches the character value at a central element")]
    NoScalarMatch,

    #[error("Laurent polynomials have {0} and {1} variables")]
    VariableMismatch(usize, usize),

    #[error("non-integral q-shift: {0}")]
    NonIntegralShift(String),

    #[error("operands belong to different rings or modules")]
    RingMismatch,

    #[error("action of the second factor is not trivial")]
    NontrivialAction,

    #[error("group does not act freely")]
    NotFree,

    #[error("character table computation failed: {0}")]
    CharacterTable(String),

    #[error("invalid input in field `{field}`: {message}")]
    Input { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
