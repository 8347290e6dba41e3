//! Exact-arithmetic combinatorics of coface graphs and permutohedra, the word
//! problem for canonical 2-isomorphisms, and deformation complexes of finite
//! K-linear models.
//!
//! Everything is computed over an exact field (arbitrary-precision rationals
//! by default, small prime fields for cross-checking); no tolerances anywhere.

pub mod csso;
pub mod deform;
pub mod field;
pub mod graph;
pub mod lincat;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod pseudo;
pub mod selftest;
pub mod series;
pub mod words;

pub use field::{Field, Fp, Rat};
pub use linalg::{Mat, SolveOutcome};

/// Default vertex budget for graph enumeration.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;
/// Default coordinate budget for exact Nat-space and complex assembly.
pub const DEFAULT_COORD_BUDGET: usize = 20_000;

/// Errors shared across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("enumeration budget exceeded: {needed} needed, {budget} allowed")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("model too shallow: degree {needed} needed, max degree {max}")]
    DegreeError { needed: usize, max: usize },
    #[error("no canonical path between {0} and {1} (different components, no enhancement)")]
    Connectivity(String, String),
    #[error("morphism is not invertible")]
    NotInvertible,
    #[error("validation failed:\n{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
