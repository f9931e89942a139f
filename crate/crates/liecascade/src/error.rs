use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Family/rank combination outside the supported bounds.
    #[error("invalid system type: {0}")]
    InvalidType(String),

    /// Vector length does not match the rank of the system.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    ShapeError { expected: usize, got: usize },

    /// A coefficient vector that is not an element of the root set.
    #[error("not a root of {system}: {vector}")]
    NotARoot { system: String, vector: String },

    /// A lattice map that does not permute the root set, or (at small rank)
    /// is provably outside the Weyl group.
    #[error("lattice map is not a Weyl group element: {0}")]
    NotWeyl(String),

    /// Root string requested for beta = +-alpha.
    #[error("degenerate root string: beta = +-alpha")]
    DegenerateString,

    /// Strong orthogonality queried for alpha = +-beta.
    #[error("degenerate pair: alpha = +-beta")]
    DegeneratePair,

    /// Folding requested along the identity diagram automorphism.
    #[error("not a folding: diagram automorphism is the identity")]
    NotAFolding,

    /// The diagram admits no nontrivial automorphism.
    #[error("no outer automorphism for {0}")]
    NoOuter(String),

    /// Chain length out of range for the requested series.
    #[error("invalid chain count {count} for rank {rank}")]
    InvalidCount { count: usize, rank: usize },

    /// Chain index out of range or of the wrong parity.
    #[error("invalid chain index {index} for rank {rank}")]
    InvalidIndex { index: usize, rank: usize },

    /// The two automorphisms of a pair do not commute.
    #[error("automorphisms do not commute")]
    NotCommuting,

    /// First member of a pair must have order at most 2.
    #[error("first automorphism has order {0} > 2")]
    NotInvolution(usize),

    /// A coefficient map does not cover the whole orthogonal set.
    #[error("coefficient map misses root {0}")]
    IncompleteCoefficients(String),

    /// Operation excluded for this system type.
    #[error("unsupported type for this operation: {0}")]
    UnsupportedType(String),

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A classification that the theory guarantees failed on a concrete
    /// input; the payload carries the offending data for inspection.
    #[error("counterexample found: {0}")]
    CounterexampleFound(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
