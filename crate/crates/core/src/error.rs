use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("`{entry}` appears more than once in the list of `{agent}`")]
    DuplicateEntry { agent: String, entry: String },

    #[error("`{name}` is declared twice")]
    DuplicateName { name: String },

    #[error("empty tie group in the list of `{agent}`")]
    EmptyTie { agent: String },

    #[error("resident `{resident}` and hospital `{hospital}` do not list each other mutually")]
    AsymmetricAcceptability { resident: String, hospital: String },

    #[error("hospital `{hospital}` has quotas [{lower}, {upper}] which violate lower <= upper <= {residents}, upper >= 1")]
    QuotaViolation {
        hospital: String,
        lower: usize,
        upper: usize,
        residents: usize,
    },

    #[error("unknown name `{name}` referenced from `{context}`")]
    UnknownName { name: String, context: String },

    #[error("malformed input at line {line}, column {column}: {message}")]
    MalformedInput {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("infeasible matching: {0}")]
    InfeasibleMatching(String),

    #[error("instance has ties; Gale-Shapley requires strict preferences")]
    TiesPresent,

    #[error("invalid tie-break policy: {0}")]
    InvalidPolicy(String),

    #[error("enumeration needs {required} steps which exceeds the budget of {limit}")]
    BudgetExceeded { required: u128, limit: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("invalid gadget quotas [{lower}, {upper}]; need 1 <= lower <= upper")]
    InvalidQuotas { lower: usize, upper: usize },

    #[error("vertex set is not a cover: edge ({0}, {1}) is uncovered")]
    NotACover(usize, usize),

    #[error("matching is not stable")]
    UnstableInput,

    #[error("instance is not in the marriage model: {0}")]
    NotMarriageModel(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
