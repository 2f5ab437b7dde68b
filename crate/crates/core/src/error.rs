use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the solvers can report.
///
/// Variants split into input errors (bad instances, bad files), contract
/// errors raised by a specific driver, and invariant violations that signal
/// a bug in this crate rather than in the input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{edge}` demands {demand} at vertex `{vertex}` whose capacity is {capacity}")]
    ClippedEdge {
        edge: String,
        vertex: String,
        demand: u64,
        capacity: u64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,

    #[error("edge `{edge}` needs mass {target} but only {available} of the decomposition accommodates it")]
    InsufficientRoom {
        edge: String,
        target: Box<Rational>,
        available: Box<Rational>,
    },
    #[error("no monotone demand ordering exists: {0}")]
    NotMonotoneOrderable(String),
    #[error("edge `{0}` has a demand other than 1")]
    NonUnitDemand(String),
    #[error("not a matching instance: {0}")]
    NotMatchingInstance(String),

    #[error("edge `{0}` has more than two endpoints")]
    NotRankTwo(String),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("parallel edges `{0}` and `{1}`")]
    ParallelEdges(String, String),
    #[error("support component {0} contains more than one cycle")]
    MultipleCycles(usize),
    #[error("parity conflict between edges `{0}` and `{1}`")]
    ParityConflict(String, String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("column generation exceeded its budget of {0} iterations")]
    IterationLimit(usize),
    #[error("oracle returned a column below its guarantee: {0}")]
    OracleGuaranteeViolated(String),

    #[error("instance has {edges} edges, above the enumeration limit of {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("unsupported projective plane order {0}")]
    UnsupportedOrder(u64),
    #[error("item {index} demands {demand} above the knapsack capacity {capacity}")]
    ClippedItem {
        index: usize,
        demand: u64,
        capacity: u64,
    },
}

impl Error {
    /// Stable machine-readable code, used by the CLI's JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::InvalidInstance(_) => "InvalidInstance",
            Error::DuplicateId(_) => "DuplicateId",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::ClippedEdge { .. } => "ClippedEdge",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::Infeasible => "Infeasible",
            Error::Unbounded => "Unbounded",
            Error::InsufficientRoom { .. } => "InsufficientRoom",
            Error::NotMonotoneOrderable(_) => "NotMonotoneOrderable",
            Error::NonUnitDemand(_) => "NonUnitDemand",
            Error::NotMatchingInstance(_) => "NotMatchingInstance",
            Error::NotRankTwo(_) => "NotRankTwo",
            Error::MalformedPath(_) => "MalformedPath",
            Error::ParallelEdges(..) => "ParallelEdges",
            Error::MultipleCycles(_) => "MultipleCycles",
            Error::ParityConflict(..) => "ParityConflict",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::IterationLimit(_) => "IterationLimit",
            Error::OracleGuaranteeViolated(_) => "OracleGuaranteeViolated",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::ClippedItem { .. } => "ClippedItem",
        }
    }
}
