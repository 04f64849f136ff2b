use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus 2^{bits} exceeds the supported maximum 2^62")]
    ModulusTooLarge { bits: u32 },

    #[error("{value} is not a unit mod 2^{bits}")]
    NotAUnit { value: u64, bits: u32 },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("generalized quaternion group H(2^{a},2;2^{},2^{a}-1) (family III) is not supported", a - 1)]
    FamilyIII { a: u32 },

    #[error("parameters are not in family I or II")]
    Unclassified,

    #[error("enumeration needs 2^{needed} steps, cap is 2^{cap}")]
    CapExceeded { needed: u32, cap: u32 },

    #[error("quadruple not in Xi x Omega: {0}")]
    NotInXiOmega(String),

    #[error("generator images do not define an automorphism")]
    NotAnAutomorphism,

    #[error("automorphisms belong to different groups")]
    ParamMismatch,

    #[error("wrong branch: {0}")]
    WrongBranch(String),

    #[error("wrong family: {0}")]
    WrongFamily(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),
}
