use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building, transforming, reducing or
/// evaluating a tree pair.
///
/// The `Display` form always starts with the variant name so that CLI
/// diagnostics name the violated invariant (`CircleTerminal: vertex u`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // tree construction
    #[error("NotATree: {0}")]
    NotATree(String),
    #[error("CircleTerminal: vertex {0}")]
    CircleTerminal(String),
    #[error("RootMissing: root {0} is not a vertex")]
    RootMissing(String),
    #[error("DuplicateVertexId: {0}")]
    DuplicateVertexId(String),
    #[error("EmptyVertexId")]
    EmptyVertexId,
    #[error("ReservedVertexId: {0} contains the reserved marker '#'")]
    ReservedVertexId(String),
    #[error("UnknownVertex: {0}")]
    UnknownVertex(String),
    #[error("UnknownEdge: {0}")]
    UnknownEdge(String),
    #[error("IndexDomain: {0}")]
    IndexDomain(String),
    #[error("Parse: {0}")]
    Parse(String),

    // transforms
    #[error("NonzeroIndex: edge {0} has index {1}")]
    NonzeroIndex(String, u32),
    #[error("NoCircleEndpoint: edge {0}")]
    NoCircleEndpoint(String),
    #[error("NotDegreeTwoCircle: vertex {0}")]
    NotDegreeTwoCircle(String),
    #[error("RootContraction: vertex {0} is the root")]
    RootContraction(String),
    #[error("NotBulletBranch: vertex {0}")]
    NotBulletBranch(String),
    #[error("RootSplit: vertex {0} is the root")]
    RootSplit(String),
    #[error("NotEssentiallyPositive: path {0} -- {1} has index sum 0")]
    NotEssentiallyPositive(String, String),

    // words
    #[error("NotInYH: word {0} does not start with y")]
    NotInYH(String),
    #[error("InvalidZIndex: {0}")]
    InvalidZIndex(String),

    // reducer
    #[error("RootNotTerminal: root {0}")]
    RootNotTerminal(String),
    #[error("NotHarvestable: {0}")]
    NotHarvestable(String),

    // modular oracle
    #[error("NotPrime: {0}")]
    NotPrime(u64),
    #[error("EvenPrime: 2 is not supported")]
    EvenPrime,
    #[error("NotPIntegral: B_{0} is not p-integral for p = {1}")]
    NotPIntegral(u64, u64),
    #[error("BernoulliOutOfRange: n = {0} exceeds p - 2 for p = {1}")]
    BernoulliOutOfRange(u64, u64),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}
