use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    InvalidPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid block profile: {0}")]
    InvalidProfile(String),
    #[error("{0} is not a unit mod {1}")]
    NotAUnit(u32, u32),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("vector does not lie in the expected subspace: {0}")]
    NotInSubspace(String),
    #[error("character is not fixed by the action")]
    NotFixed,
    #[error("cochain is not a 2-cocycle at ({0}, {1}, {2})")]
    NotCocycle(usize, usize, usize),
    #[error("cochain is not admissible: {0}")]
    NotAdmissible(String),
    #[error("{what} needs {needed} but the cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
