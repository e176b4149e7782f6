use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("probability {0} is outside the open interval (0, 1)")]
    ProbabilityOutOfRange(String),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("n must be at least 1")]
    EmptyN,

    #[error("instance has {n} variables; exact enumeration is capped at {cap}")]
    TooManyVariables { n: usize, cap: usize },

    #[error("support point {0} is below 1")]
    SupportBelowOne(String),

    #[error("instance must contain at least one variable")]
    EmptyInstance,

    #[error("trials must be at least 1")]
    ZeroTrials,

    #[error("workers must be at least 1")]
    ZeroWorkers,

    #[error("the e bracket needs at least 2 terms, got {0}")]
    TooFewTerms(u32),

    #[error("sweep needs at least 2 grid points, got {0}")]
    TooFewPoints(u32),

    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),

    #[error("spec field `{field}`: {reason}")]
    SpecField { field: String, reason: String },

    #[error("malformed report: {0}")]
    MalformedReport(String),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: impl Into<i64>, lo: i64, hi: i64) -> Self {
        Error::OutOfRange {
            name,
            value: value.into(),
            lo,
            hi,
        }
    }
}
