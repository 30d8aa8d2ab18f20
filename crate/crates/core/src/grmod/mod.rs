//! Graded modules over quadratic path algebras, stored on a finite window
//! of internal degrees.
//!
//! Besides the representation itself this module provides simple and
//! projective modules, shifts, sums, the graded dual, submodules generated
//! in one degree, the radical filtration (`gr`), the generation-degree
//! filtration (adjusted `gr`) and isomorphism tests.

mod construct;
mod filtration;
mod hom;
mod map;
mod module;
mod random;
mod sub;

pub use filtration::{adjusted_assoc_graded, assoc_graded, submodule_generated, FiltrationReport, FiltrationStep};
pub use hom::{hom_space, is_isomorphic, IsoResult};
pub use map::ModuleMap;
pub use module::{GradedModule, ModuleBuilder, Violation};
pub use random::random_module;
pub use sub::{generated_family, image_family, kernel_family, subquotient, Family, Subquotient};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrModError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("window [{0}, {1}] is empty")]
    EmptyWindow(i64, i64),
    #[error("degree {0} lies outside the module window")]
    OutsideWindow(i64),
    #[error("action of {arrow} at degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("direct sum of no modules")]
    EmptySum,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("projective window ends at {top} below its shift {shift}")]
    ProjectiveWindow { shift: i64, top: i64 },
    #[error("degree {0} is not a generation degree")]
    NotGenerationDegree(i64),
}
