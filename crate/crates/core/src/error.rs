use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("{field}: index {index} out of range (bound {bound})")]
    BadIndex {
        field: String,
        index: usize,
        bound: usize,
    },
    #[error("edge {edge}: stabilizer must be at least 1")]
    InvalidStabilizer { edge: usize },
    #[error("marking {0} appears more than once")]
    DuplicateMarking(u32),
    #[error("multi-index has length {found}, genus requires {expected}")]
    MultiIndexLengthMismatch { expected: usize, found: usize },
    #[error("multi-index entries must be positive")]
    InvalidMultiIndex,
    #[error("no stable graphs of genus {genus} with {legs} legs")]
    UnsupportedGenus { genus: u64, legs: usize },
    #[error("{what} is {value}, above the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("moduli must be positive")]
    NonPositiveModulus,
    #[error("map Z/{domain} -> Z/{codomain} sending 1 to {entry} is not a homomorphism (row {row}, column {col})")]
    IllDefinedHom {
        row: usize,
        col: usize,
        entry: String,
        domain: String,
        codomain: String,
    },
    #[error("total degree is not an integer")]
    NonIntegralTotal,
    #[error("enumeration domain of size {size} exceeds the cap {cap}")]
    DomainTooLarge { size: BigUint, cap: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("target does not lie in the kernel of the augmentation")]
    AugmentationNonzero,
    #[error("{r1} and {r2} are not coprime")]
    NotCoprime { r1: u64, r2: u64 },
    #[error("line bundles live on different graphs")]
    GraphMismatch,
    #[error("invalid line bundle data: {0}")]
    InvalidBundle(String),
    #[error("graph has a vertex of positive genus")]
    NotRational,
    #[error("edge {edge}: stabilizer {stabilizer} does not divide r * mult = {r} * {mult}")]
    StabilizerNotDivisible { edge: usize, stabilizer: u64, r: u64, mult: u64 },
    #[error("automorphism order {0} is not one of 2, 4, 6")]
    BadAutOrder(u32),
    #[error("fibre with {fibre} points exceeds the degree {degree}")]
    FibreExceedsDegree { fibre: u64, degree: u64 },
    #[error("r = {0} is not a prime at least 5")]
    BadR(u64),
    #[error("the involution does not preserve the set of root classes")]
    InvolutionUndefined,
    #[error("orbit enumeration found {direct} orbits but Burnside gives {burnside}")]
    OrbitCountMismatch { direct: usize, burnside: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
