//! Strictly unital A∞-module structures with `m_1 = 0` on a fixed
//! bigraded homology over `Γ`, their morphisms, and orbit classification
//! over finite fields.
//!
//! `m_n` lowers the cohomological index by `n - 2` and `f_n` by `n - 1`;
//! both preserve the internal degree and respect the vertex grading, so
//! their arguments are composable chains of `Γ` basis paths of positive
//! length.

mod homology;
mod orbits;
mod structure;

pub use homology::{BasisVector, BigradedHomology};
pub use orbits::{classify_orbits, Orbit, OrbitReport, DEFAULT_BUDGET};
pub use structure::{
    compose, default_verify_arity, derive_morphism_slots, derive_slots, morphism_check, slot_label, stasheff_check,
    AInfMorphismParams, AInfStructure, Arg, CheckReport, ProductSlot, Residual,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AInfError {
    #[error("homology parts are modules over different algebras")]
    AlgebraMismatch,
    #[error("homology at index {0} is truncated; parts must be finite and given in full")]
    Truncated(i64),
    #[error("index {0} given twice")]
    DuplicateIndex(i64),
    #[error("orbit search needs a finite field")]
    InfiniteField,
    #[error("search space too large: {structures} structures, {morphisms} morphisms (budget {budget} evaluations)")]
    SearchSpaceTooLarge {
        structures: u64,
        morphisms: u64,
        budget: u64,
    },
}
