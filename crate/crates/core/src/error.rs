use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },

    #[error("order {from} does not divide {to}")]
    NotDivisor { from: u64, to: u64 },

    #[error("modulus {0} is not square-free")]
    NotSquareFree(u64),

    #[error("modulus must be at least 3, got {0}")]
    ModulusTooSmall(u64),

    #[error("weight r must be at least 1")]
    WeightTooSmall,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),

    #[error("generalized Bernoulli number B_{{{r},chi}} vanishes for {chi}")]
    ZeroBernoulli { r: u32, chi: String },

    #[error("element does not lie in the subfield of order {0}")]
    NotInSubfield(u64),

    #[error("character modulus {chi} does not match {n}")]
    CharacterModulus { chi: u64, n: u64 },

    #[error("character {0} is not primitive")]
    NotPrimitive(String),

    #[error("series limit {limit} outside {min}..={max}")]
    Limit { limit: u64, min: u64, max: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
