//! Integer matrices, Smith normal form and finitely generated abelian groups.

mod group;
mod hom;
pub(crate) mod lattice;
mod matrix;
mod sequence;
mod snf;

use alloc::string::String;
use num_bigint::BigInt;

pub use group::FGAbelianGroup;
pub use hom::{count_homs, enumerate_homs, hom_homology, hom_iter, GroupHom, HomIter};
pub use matrix::IntegerMatrix;
pub use sequence::{
    exact_sequence_check, homology_at, poincare_duality_check, uct_cohomology, uct_mod_p_cohomology,
    uct_mod_p_homology, DualityCheck, Exactness,
};
pub use snf::{invariant_factors, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("{rows}x{cols} matrix needs {} entries, got {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("shape mismatch: {left:?} against {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("invariant factor {0} must be at least 2")]
    BadInvariantFactor(BigInt),
    #[error("invariant factor {1} is not divisible by {0}")]
    DivisibilityChain(BigInt, BigInt),
    #[error("cannot parse group `{0}`")]
    Parse(String),
    #[error("image of generator {generator} violates its order")]
    NotWellDefined { generator: usize },
    #[error("maps do not compose")]
    NotComposable,
    #[error("composite of consecutive maps is nonzero")]
    NonzeroComposite,
    #[error("vector is not in the lattice")]
    NotASubgroup,
    #[error("free-to-free homomorphisms need a coefficient bound")]
    UnboundedHomSearch,
    #[error("duality check needs an orientable manifold")]
    NonOrientable,
    #[error("{groups} groups cannot be joined by {maps} maps")]
    SequenceLength { groups: usize, maps: usize },
}
