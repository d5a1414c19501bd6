use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root datum: {0}")]
    UnsupportedType(String),
    #[error("rank {rank} exceeds the cap of {cap}")]
    RankCap { rank: usize, cap: usize },
    #[error("Weyl group of order {order} exceeds the enumeration cap of {cap}")]
    GroupTooLarge { order: u128, cap: usize },
    #[error("weight {0} has the wrong number of coordinates")]
    WeightShape(String),
    #[error("weight {weight} pairs non-integrally with coroot {index}")]
    NonIntegralPairing { weight: String, index: usize },
    #[error("simple index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("{0} is not a subset of {1}")]
    NotSubset(String, String),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("orbit set not expressible: {0}")]
    OrbitSpec(String),
    #[error("specialization at q0 = {0} is singular")]
    SingularSpecialization(String),
    #[error("element is not in the parabolic module x_{slot}H: {reason}")]
    NotInParabolicModule { slot: usize, reason: String },
    #[error("eigencondition fails for image of x_{slot} at simple index {index}")]
    EigenconditionFails { slot: usize, index: usize },
    #[error("composition of incompatible blocks: {0}")]
    IncompatibleBlocks(String),
    #[error("expansion left a nonzero residue: {0}")]
    Residue(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("point counts are not polynomial in q: {0}")]
    NotPolynomial(String),
    #[error("independent computations disagree: {0}")]
    CrossCheck(String),
    #[error("config error at line {line}, key `{key}`: {reason}")]
    Config { line: usize, key: String, reason: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
