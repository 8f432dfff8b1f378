use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },
}

impl ParseError {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("braid word `{0}` must be positive and non-split")]
    NotNonSplitPositive(String),
    #[error("unsupported link: {0}")]
    UnsupportedLink(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("irregular point theta = {theta}: nullity {nullity}, nearest jump near {nearest_jump}")]
    IrregularPoint {
        theta: String,
        nullity: usize,
        nearest_jump: String,
    },
    #[error("one-sided limit at theta = {0} did not stabilise above the epsilon floor")]
    UnstableLimit(String),
    #[error("torus-link hypothesis required for k >= 6")]
    TorusHypothesisRequired,
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("certificate format: {0}")]
    Format(String),
    #[error("move {index}: {reason}")]
    InvalidMove { index: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
