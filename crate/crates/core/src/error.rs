use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {what} from {input:?}")]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
}

impl ParseError {
    pub fn new(what: &'static str, input: &str) -> Self {
        ParseError {
            what,
            input: input.chars().take(120).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("conditional probability undefined: condition has measure zero")]
    UndefinedConditional,

    #[error("element is not below the cylinder {0}")]
    NotBelow(String),

    #[error("cannot halve measure: {0}")]
    NoSplit(String),

    #[error("unknown index {0}")]
    UnknownIndex(usize),

    #[error("name index {n} is outside horizon {horizon}")]
    BeyondHorizon { n: usize, horizon: usize },

    #[error("family is not independently determined: {0}")]
    NotIndependent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("condition {xi} meets the forbidden event ({detail})")]
    InvariantViolated { xi: usize, detail: String },

    #[error("no slack at n = {n}: measure of the overlap plus weight is zero")]
    NoSlack { n: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
