use thiserror::Error;

use crate::ring::Modulus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("Pauli vector must have even length, got {0}")]
    OddLength(usize),

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: Modulus, right: Modulus },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("prime {p} does not divide {modulus}")]
    PrimeDoesNotDivide { p: u64, modulus: u64 },

    #[error("prime {0} appears in more than one component")]
    DuplicatePrime(u64),

    #[error("generators {i} and {j} do not commute (symplectic product {product})")]
    NonCommuting { i: usize, j: usize, product: i64 },

    #[error("generators are not independent")]
    DependentGenerators,

    #[error("code is not local-dimension-invariant: generators {i} and {j} have integer product {product}")]
    NotLdi { i: usize, j: usize, product: i64 },

    #[error("canonical form failed: no pivot available for row {row}")]
    PivotFailure { row: usize },

    #[error("LDI correction left generators {i} and {j} with integer product {product}")]
    LdiPostcondition { i: usize, j: usize, product: i64 },

    #[error("could not factor {0}")]
    FactorizationFailed(u64),

    #[error("offset {offset} plus block length {len} exceeds {total}")]
    EmbedOutOfRange {
        offset: usize,
        len: usize,
        total: usize,
    },

    #[error("operator anticommutes with generator {generator} (product {product})")]
    Anticommutes { generator: usize, product: i64 },

    #[error("operator is already a member of the stabilizer group")]
    AlreadyMember,

    #[error("error is detectable (syndrome {0:?})")]
    Detectable(Vec<i64>),

    #[error("search budget of {0} exceeded")]
    BudgetExceeded(u64),

    #[error("{0}")]
    Invalid(String),
}
