use thiserror::Error;

/// Errors raised by the group, character and decomposition engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a p-group for p = {0}")]
    NotAPGroup(u64),
    #[error("no prime l = 1 mod {exponent} with l > 2 sqrt({order}) below {bound}")]
    NoSuitablePrime { exponent: u64, order: u64, bound: u64 },
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("class function is not a character: {0}")]
    NotACharacter(String),
    #[error("class count {count} exceeds cap {cap}")]
    ClassCountExceeded { count: usize, cap: usize },
    #[error("search node budget {0} exceeded")]
    NodeBudgetExceeded(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("pattern match failed: {0}")]
    PatternMatchFailed(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, value: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }

    /// True for errors that mean "too big to decide here" rather than a mathematical outcome.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::ClassCountExceeded { .. }
                | Error::NodeBudgetExceeded(_)
                | Error::NoSuitablePrime { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
