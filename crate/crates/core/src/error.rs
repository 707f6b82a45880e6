//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("permutation degrees do not match: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("element index {index} out of range (order {order})")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,

    #[error("map is not injective")]
    NotInjective,

    #[error("automorphism does not leave the subgroup invariant")]
    NotInvariant,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("search budget of {budget} exhausted during {context}")]
    BudgetExceeded { budget: u64, context: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("graphs do not match")]
    GraphMismatch,

    #[error("amalgam is not of the given type: {0}")]
    TypeMismatch(String),

    #[error("invalid vertex {vertex} (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("graph is not connected from the requested base vertex")]
    Disconnected,

    #[error("path endpoints do not match for concatenation")]
    EndpointMismatch,

    #[error("graph of groups is not rigid: no complement of ker(alpha) on dart {dart}")]
    NotRigid { dart: usize },

    #[error("invalid instance file: {0}")]
    SchemaError(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for input problems, 3 for budget/cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}
