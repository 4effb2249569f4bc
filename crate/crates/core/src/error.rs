use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("empty point name")]
    EmptyName,
    #[error("invalid minimal open set for `{point}`: {reason}")]
    InvalidMinOpen { point: String, reason: String },

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{a}` <= `{b}` <= `{c}` but not `{a}` <= `{c}`")]
    NotTransitive { a: String, b: String, c: String },
    #[error("relation is not antisymmetric: `{0}` and `{1}` are equivalent")]
    NotAntisymmetric(String, String),

    #[error("assignment has {got} entries, source has {expected} points")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment lands outside the target: {0}")]
    AssignmentOutOfRange(String),
    #[error("{what} has {n} points, limit is {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("stratum `{0}` is empty")]
    EmptyStratum(String),
    #[error("duplicate stratum `{0}`")]
    DuplicateStratum(String),
    #[error("strata not disjoint: point `{point}` lies in `{first}` and `{second}`")]
    StrataNotDisjoint {
        point: String,
        first: String,
        second: String,
    },
    #[error("strata do not cover the space: point `{0}` is in no stratum")]
    StrataNotCovering(String),
    #[error("order elements do not match the stratum ids: {0}")]
    OrderMismatch(String),
    #[error("decomposition map is not continuous into the given order: {0}")]
    NotContinuous(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown symbolic family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("empty facet")]
    EmptyFacet,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    InvalidDocument(String),

    /// A theorem or operation was invoked outside its hypotheses.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Two independent evaluations of equivalent conditions disagreed.
    #[error("internal equivalence disagreement: {0}")]
    Defect(String),
}

impl Error {
    pub fn is_defect(&self) -> bool {
        matches!(self, Error::Defect(_))
    }

    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::NotContinuous(_))
    }
}

/// Returns a [`Error::Defect`] unless `cond` holds.
pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Defect(what()))
    }
}
