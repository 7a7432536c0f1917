//! Filtrations over finite posets, cofiltrations of spanning trees, persistent
//! sets and the upper set precover of the 1-cycle module.

mod cofiltration;
mod filtration;
mod persistent_set;
mod precover;

use thiserror::Error;

use crate::complex::{ComplexError, Simplex};
use crate::spanning::SpanningError;

pub use cofiltration::{
    check_tau1_functoriality, cofiltration_of_spanning_trees, enumerate_spanning_trees, is_cofiltration,
    subfiltration_of_spanning_trees, CofiltrationDefect, SpanningCofiltration, DEFAULT_SEARCH_BUDGET,
};
pub use filtration::Filtration;
pub use persistent_set::{colimit_persistent_set, upper_set_decompose, Colimit, PersistentSet, UpperSetClass};
pub use precover::{
    ensure_epimorphism, precover, precover_for, precover_map_and_check, representative_persistent_set, GradeCheck,
    Precover, Summand,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("unknown grade `{0}`")]
    UnknownGrade(String),
    #[error("simplex {0} is not in the total complex")]
    UnknownSimplex(Simplex),
    #[error("simplex {0} has no entry grade")]
    MissingEntry(Simplex),
    #[error("face `{face}` enters after its coface `{coface}` (coface grade `{grade}`)")]
    FaceGradeViolation { face: String, coface: String, grade: String },
    #[error("subfiltration search exceeded its budget after {used} steps")]
    SearchBudgetExceeded { used: u64 },
    #[error("colimit projection at grade {grade} is not injective")]
    NotInjective { grade: usize },
    #[error("structure map {from} -> {to} is {reason}")]
    BadStructureMap { from: usize, to: usize, reason: &'static str },
    #[error("edge {0} is never excluded from a spanning tree")]
    EdgeNeverExcluded(Simplex),
    #[error("evaluation is not onto Z_1 at grade {grade}")]
    EpimorphismFailed { grade: String },
    #[error("map is not order preserving: {0} precedes {1} but their images do not")]
    NotOrderPreserving(Simplex, Simplex),
    #[error("map is not dimension preserving on {0}")]
    NotDimensionPreserving(Simplex),
    #[error("family is not a cofiltration of spanning trees: {0}")]
    NotACofiltration(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
}
