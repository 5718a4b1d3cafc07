use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The value is not a p-adic integer.
    #[error("negative p-adic valuation {valuation} for p = {prime}")]
    NegativeValuation { prime: u64, valuation: i64 },

    #[error("insufficient precision: value known mod p^{available}, comparison needs p^{required}")]
    InsufficientPrecision { available: u32, required: u32 },

    #[error("{value} is not coprime to {prime}")]
    NotCoprime { value: i64, prime: u64 },

    #[error("index {index} out of range (maximum {max})")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("{value} has no square root modulo {prime}")]
    NoRoot { value: i64, prime: u64 },

    #[error("p = {prime} is not congruent to {expected} mod 3")]
    WrongResidueClass { prime: u64, expected: u64 },

    #[error("division by a value that is zero to the available precision")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arithmetic on values for different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
}
