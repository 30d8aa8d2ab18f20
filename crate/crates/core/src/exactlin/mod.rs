//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything downstream (path algebras, module representations, complexes,
//! A-infinity coefficient tables) is expressed through [`Matrix`] over a
//! [`Field`]. Pivoting is deterministic: the first nonzero entry in column
//! order, so every basis produced here is reproducible.

mod field;
mod matrix;

pub use field::{format_elem, is_negative, is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{annihilator, quotient_basis, same_span, LinearSolver, Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large for machine-word arithmetic")]
    PrimeTooLarge(u64),
    #[error("subspace columns are dependent (rank {rank} < {columns} columns)")]
    DependentSubspace { rank: usize, columns: usize },
}
