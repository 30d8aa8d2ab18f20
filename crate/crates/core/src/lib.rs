//! Exact computations around Koszul duality for quadratic path algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactlin`]: exact matrices over ℚ and GF(p).
//! * [`quiver`]: quivers, paths, quadratic algebras `kQ/(R)`, opposites and
//!   quadratic duals.
//! * [`grmod`]: graded modules stored on a finite window of internal
//!   degrees, with duals, filtrations and isomorphism tests.
//! * [`resolve`]: minimal graded projective resolutions and Betti tables.
//! * [`kdual`]: the complex `GD(M)` over the quadratic dual, its homology and
//!   the Koszul / weakly Koszul / quasi-Koszul classification.
//! * [`ainfty`]: enumeration and orbit classification of A-infinity module
//!   structures with vanishing differential on a fixed homology.

pub mod ainfty;
pub mod exactlin;
pub mod grmod;
pub mod kdual;
pub mod quiver;
pub mod resolve;
pub mod samples;
