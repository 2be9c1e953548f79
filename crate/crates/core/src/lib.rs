//! Exact computation of `D(n)`, the dimension of the space of class functions
//! on `S_n` spanned by the characters of the symmetric powers `S^N V` of the
//! standard permutation representation.
//!
//! `D(n)` is the rank of the matrix whose row for each partition `λ ⊢ n`
//! holds the power series coefficients of `f_λ(q) = 1/∏(1 - q^{λ_i})`. Next
//! to it the crate computes the recursive upper bound `U(n)`, the lower-bound
//! chain `E(n) ≥ G(n) ≥ H(n)`, and verified integer relations among the
//! `f_λ`.
//!
//! ```
//! use symspan::{bounds, rank};
//!
//! let m = rank::build_matrix(7).unwrap();
//! assert_eq!(rank::rank_exact(&m), 13);
//! assert_eq!(bounds::compute_u(7)[7], 13);
//! assert_eq!(rank::nullspace_certificates(7).unwrap().len(), 15 - 13);
//! ```
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod arith;
pub mod bounds;
pub mod cache;
pub mod cli;
pub mod error;
pub mod golden;
pub mod partitions;
pub mod rank;
pub mod series;

pub use error::{Error, Result};
