//! Serre spectral sequences of fibrations with abstract differentials.
//!
//! Pages hold finitely generated abelian groups at bidegrees `(p, q)`;
//! `d^r` goes from `(p, q)` to `(p - r, q + r - 1)`. The solver enumerates
//! differentials as homomorphisms between the groups on each page and keeps
//! the scenarios whose limit is compatible with the known homology.

mod extension;
mod gysin;
mod page;
mod solver;

use crate::abelian::AbelianError;

pub use extension::{
    diagonal_verdict, extension_middles, extension_necessary, infinity_consistency, iterated_extensions,
    DiagonalVerdict, EXTENSION_ORDER_CAP,
};
pub use gysin::{gysin_solve, GysinReport, LongExactTemplate, MapSlot, TemplateNode};
pub use page::{e2_page, turn_page, BaseConnectivity, BigradedPage, Bidegree, DifferentialAssignment};
pub use solver::{solve, Constraint, FibrationProblem, SearchBounds, Slot, Solution, SolveReport, Space};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecSeqError {
    #[error("base is not simply connected; pass the untwisted override to proceed")]
    TwistedCoefficients,
    #[error("differential at {at:?} on page {page} does not match the page")]
    Bidegree { at: Bidegree, page: usize },
    #[error("page {page} given differentials for page {differential}")]
    PageMismatch { page: usize, differential: usize },
    #[error("ill-defined differential at {at:?}: {source}")]
    IllDefined { at: Bidegree, source: AbelianError },
    #[error("d∘d is nonzero through {at:?}")]
    DSquaredNonzero { at: Bidegree },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("extension problem in degree {degree} is too large to enumerate")]
    ExtensionCap { degree: usize },
    #[error("problem has an empty base table")]
    EmptyBase,
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
