use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Errors are `Clone` so lazily computed results (the cached subgroup
/// lattice) can hand out the same failure to every caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("group order exceeds the enumeration cap {cap}")]
    OrderCap { cap: usize },

    #[error("subgroup lattice exceeds the cap of {cap} subgroups")]
    LatticeCap { cap: usize },

    #[error("elementary-check budget exceeded: {needed} checks needed, budget is {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("element {0} is not in the parent group")]
    NotInParent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed object failed a property that a theorem guarantees.
    /// This always signals a bug in the engine.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
}

impl Error {
    /// True for errors that mean "this input is too big", as opposed to
    /// malformed input or an engine bug.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::DegreeCap { .. }
                | Error::OrderCap { .. }
                | Error::LatticeCap { .. }
                | Error::Budget { .. }
        )
    }

    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
