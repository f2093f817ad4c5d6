use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched root orders: {0} vs {1}")]
    FieldMismatch(u32, u32),

    #[error("root order must be positive")]
    ZeroRootOrder,

    #[error("malformed scalar literal {literal:?}: {reason}")]
    ScalarSyntax { literal: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a basis of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("U(L) not finite-dimensional at this cap ({cap} PBW monomials): {obstruction}")]
    NotFiniteDimensional { cap: usize, obstruction: String },

    #[error(
        "element is not in W^{p}: basis term has PBW length {pbw_len} and wedge length {wedge_len}"
    )]
    NotInFiltrationPiece {
        p: usize,
        pbw_len: usize,
        wedge_len: usize,
    },

    #[error("chain element is not in C_{expected}: found a term of wedge length {found}")]
    WrongChainDegree { expected: usize, found: usize },

    #[error("antipode is not invertible: {0}")]
    AntipodeNotInvertible(String),

    #[error("the unit of the algebra is not a basis vector; the normalized bar complex needs one")]
    UnitNotBasisVector,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
