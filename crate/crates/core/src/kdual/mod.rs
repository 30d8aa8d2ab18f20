//! The complex `GD(M)` over the quadratic dual `Γ`, its homology as
//! `Γ`-modules, and the classification of `M` read off that homology.
//!
//! `GD(M)` is built directly from the graded parts of `M`: term `i` comes
//! from `M_{-i}` and the differential from the transposed arrow actions.

mod classify;
mod complex;
mod homology;

pub use classify::{
    check_homology_formulas, classify, classify_over, hat_e, hat_e_over, Bounds, Classification, ClassifyReport,
    FormulaCheck, FormulaReport, HatE,
};
pub use complex::{koszul_dual_complex, koszul_dual_complex_over, ExpandedComplex, GradedComplex};
pub use homology::{expanded_homology, homology, soft_truncate, HomologyEntry, HomologyReport};

use thiserror::Error;

use crate::resolve::ResolveError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KDualError {
    #[error("module is not bounded below")]
    UnboundedBelow,
    #[error("module window ends before internal degree {0}, which the expansion needs")]
    WindowTooSmall(i64),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}
