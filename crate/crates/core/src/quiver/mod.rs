//! Quivers, paths and quadratic path algebras `Λ = kQ/(R)`.
//!
//! Paths compose right to left: the written path `beta alpha` applies
//! `alpha` first. Basis order is lexicographic in arrow declaration order.

mod algebra;
mod paths;

pub use algebra::{AlgebraElement, GradedComponent, QuadraticAlgebra, DUAL_SUFFIX, OPPOSITE_SUFFIX};
pub use paths::{Arrow, Path, Quiver};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("`{0}` is not a composable path")]
    NotComposable(String),
    #[error("relation matrix has {found} rows, expected {expected} (one per length-2 path)")]
    RelationShape { expected: usize, found: usize },
    #[error("relations are dependent (rank {rank} < {columns})")]
    DependentRelations { rank: usize, columns: usize },
    #[error("relation {0} mixes paths with different endpoints")]
    MixedEndpoints(usize),
}
