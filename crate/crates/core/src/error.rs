use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// `InvariantViolation` is special: it is raised only when a fact that is a
/// theorem about the construction fails to hold at runtime, which means the
/// implementation (not the input) is broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {index} out of range for a ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("relation is not a partial order: {0}")]
    NotAPoset(String),

    #[error("not a lattice: elements {0} and {1} have no least upper or greatest lower bound")]
    NotALattice(usize, usize),

    #[error("a lattice must have at least one element")]
    EmptyLattice,

    #[error("lattice is not semimodular")]
    NotSemimodular,

    #[error("lattice is not slim (its join-irreducibles have width > 2)")]
    NotSlim,

    #[error("lattice is a chain")]
    IsAChain,

    #[error("lattice has {0} elements; at least 3 are required")]
    TooSmall(usize),

    #[error("the ground set is not a member of the flat family")]
    GroundNotInFamily,

    #[error("geometry has not passed the axiom check")]
    NotVerifiedGeometry,

    #[error("not a Faigle geometry: {0}")]
    NotAFaigleGeometry(String),

    #[error("the embedding is not a sublattice embedding")]
    NotASublattice,

    #[error("map is not an order embedding: {0}")]
    NotAnEmbedding(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("size bound exceeded: {requested} > {limit}")]
    BoundExceeded { requested: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotAPoset(_) => "NotAPoset",
            Error::NotALattice(..) => "NotALattice",
            Error::EmptyLattice => "EmptyLattice",
            Error::NotSemimodular => "NotSemimodular",
            Error::NotSlim => "NotSlim",
            Error::IsAChain => "IsAChain",
            Error::TooSmall(_) => "TooSmall",
            Error::GroundNotInFamily => "GroundNotInFamily",
            Error::NotVerifiedGeometry => "NotVerifiedGeometry",
            Error::NotAFaigleGeometry(_) => "NotAFaigleGeometry",
            Error::NotASublattice => "NotASublattice",
            Error::NotAnEmbedding(_) => "NotAnEmbedding",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::Parse { .. } => "ParseError",
        }
    }
}

/// Returns `InvariantViolation(name)` unless `cond` holds.
pub(crate) fn ensure(cond: bool, name: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invariant(name))
    }
}
