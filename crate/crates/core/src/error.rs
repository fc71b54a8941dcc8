use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has no p-th root in this field")]
    NotAPthPower,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("monomial degree {degree} exceeds the budget {budget}")]
    DegreeBudgetExceeded { degree: u64, budget: u64 },
    #[error("ideal is not zero-dimensional: no pure power of `{0}` in the leading-term ideal")]
    NotZeroDimensional(String),
    #[error("ideal is not primary to the origin: {0}")]
    NotPrimaryToOrigin(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("zero matrix does not define a socle ideal")]
    ZeroMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{count} candidate subspaces exceed the budget of {budget}; try --rank1-only or a larger --budget")]
    TooManySubspaces { count: u128, budget: u64 },
    #[error("ideal does not properly contain I0: {0}")]
    NotProperContainment(String),
    #[error("incompatible base change: {0}")]
    IncompatibleSpec(String),
    #[error("residue field is infinite; exhaustive enumeration needs a finite field (use rank-1 sampling)")]
    InfiniteResidueField,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
    #[error("computation paths disagree: {0}")]
    PathMismatch(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by the input being rejected rather than by a
    /// resource limit or an internal failure.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::TooManySubspaces { .. }
                | Error::DegreeBudgetExceeded { .. }
                | Error::PathMismatch(_)
                | Error::Io(_)
        )
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::TooManySubspaces { .. } | Error::DegreeBudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
