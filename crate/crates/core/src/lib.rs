//! Parabolic Kazhdan-Lusztig polynomials for extended affine symmetric groups,
//! canonical bases of q-Fock spaces, and ribbon-tableau q-analogues of
//! Littlewood-Richardson coefficients.

pub mod affine_weyl;
pub mod cli;
pub mod fock_infty;
pub mod fock_r;
pub mod golden;
pub mod hecke_kl;
pub mod laurent;
pub mod matrix;
pub mod partitions;
pub mod ribbon;
pub mod symfun;
pub mod verify;

pub use laurent::{LaurentPoly, Poly};
pub use partitions::{Partition, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error in {input:?} at position {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("level m must be nonzero")]
    ZeroLevel,
    #[error("modulus n must be positive, got {0}")]
    BadModulus(i64),
    #[error("rank {rank} too small for {what}")]
    RankTooSmall { rank: usize, what: String },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not strictly decreasing")]
    NotStrict(String),
    #[error("weight {0} lies outside the window")]
    WindowViolation(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
