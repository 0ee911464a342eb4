use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive, got 0")]
    ZeroGenerator,
    #[error("gcd of generators is {0}, not 1: the complement is infinite")]
    GcdNotOne(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("degenerate triple: every entry must be at least 2")]
    DegenerateTriple,
    #[error("ramification profile is empty")]
    EmptyProfile,
    #[error("ramification profile must be strictly increasing and positive: {0:?}")]
    ProfileNotIncreasing(Vec<u64>),
    #[error("profile entry {0} is not an element of the semigroup")]
    ProfileNotInSemigroup(u64),
    #[error("profile entry {0} is odd")]
    OddEntry(u64),
    #[error("profile entry {entry} is not below 2g = {bound}")]
    ProfileTooLarge { entry: u64, bound: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no assignment for variable {0}")]
    MissingAssignment(String),
    #[error("structure violation at s = {0}")]
    StructureViolation(u64),
    #[error("condition at order {gap} has no variable occurring linearly: {condition}")]
    NonlinearCondition { gap: u64, condition: String },
    #[error("localization polynomial vanished: {0}")]
    PivotDegenerate(String),
    #[error("truncation too tight: {0}")]
    TruncationTooTight(String),
    #[error("modular trials disagree on b_P: {0:?}")]
    TrialDisagreement(Vec<usize>),
    #[error("input exceeds configured limits: {0}")]
    LimitExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
