//! Bachet curves y^2 = x^3 + a^3 over prime fields F_p.
//!
//! The crate computes rational-point counts (by character sum and by
//! enumeration), determines the group structure C_n x C_nm, and sweeps
//! prime ranges to check a fixed catalogue of congruence and structure
//! claims about these curves, reporting a verdict for every claim on
//! every applicable (p, class) row.

pub mod counting;
pub mod curve;
pub mod error;
pub mod field;
pub mod report;
pub mod structure;
pub mod theorems;

pub use counting::{count_by_character_sum, count_by_enumeration, CurveCount, ResidueClass};
pub use curve::{BachetCurve, Point, RationalSolution};
pub use error::{Error, Result};
pub use field::{FieldElement, Prime};
pub use structure::{GroupStructure, TorsionCensus};
pub use theorems::{ClaimId, ClassReport, NnInstance, Verdict};
