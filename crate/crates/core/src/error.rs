use thiserror::Error;

use crate::structure::NormalViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message} (at token `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("relation is not compatible with the operation: ({a}, {b}) related but ({x}, {y}) are not")]
    NotCongruence {
        a: String,
        b: String,
        x: String,
        y: String,
    },

    #[error("not an AG-group: {0}")]
    NotAgGroup(String),

    #[error("not an AG**-groupoid: {0}")]
    NotAgStarStar(String),

    #[error("not completely inverse: {0}")]
    NotCompletelyInverse(String),

    #[error("not a commutative inverse semigroup: {0}")]
    NotCommutativeInverseSemigroup(String),

    #[error("kernel definitions disagree at element {0}")]
    KernelMismatch(String),

    #[error("invalid congruence pair: {0}")]
    InvalidPair(String),

    #[error("relation is not a refinement: ({a}, {b}) in the finer relation only")]
    NotARefinement { a: String, b: String },

    #[error("subset is not normal: {0}")]
    NotNormal(NormalViolation),

    #[error("congruence is not E-unitary")]
    NotEUnitary,

    #[error("invalid strong semilattice: {0}")]
    InvalidStructure(String),

    #[error("subset is not closed under meet and join: {0}")]
    NotASublattice(String),

    #[error("order {order} exceeds the configured bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },

    #[error("empty subset")]
    EmptySubset,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}
