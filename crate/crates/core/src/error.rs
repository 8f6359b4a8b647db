use thiserror::Error;

/// Errors raised by poset construction, tableau validation and the
/// enumeration engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("poset has no elements")]
    EmptyPoset,
    #[error("poset has {0} elements; at most {max} are supported", max = crate::set::MAX_ELEMENTS)]
    TooManyElements(usize),
    #[error("cover relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("poset is not connected (`{0}` and `{1}` lie in different components)")]
    Disconnected(String, String),
    #[error("poset `{0}` has no minimum element")]
    NoMinimum(String),
    #[error("element names collide: `{0}` occurs in both posets")]
    NameCollision(String),
    #[error("`{0}` is not an order ideal")]
    NotAnIdeal(String),
    #[error("lambda is not contained in nu")]
    NotNested,
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid dotted tableau: {0}")]
    InvalidDotted(String),
    #[error("label {0} is out of range (labels are 1..=255)")]
    LabelOutOfRange(i64),
    #[error("invalid set of inner corners: {0}")]
    InvalidCorners(String),
    #[error("tableau is not of straight shape")]
    NotStraight,
    #[error("`{0:?}` is not a funnel")]
    NotAFunnel(Vec<String>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("`{node}` is not an acyclic node of component `{component}`")]
    NotAcyclic { component: String, node: String },
    #[error("minimally-labeled tableau of shape {0:?} is not a unique rectification target")]
    NotUrt(Vec<String>),
    #[error("invalid slant-sum decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
