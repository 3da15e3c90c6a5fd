//! Exact computations for the topology of G2-related spaces.
//!
//! Integral homology from cell models, a Serre spectral sequence solver,
//! graded ring presentations and octonionic plane geometry. Everything here
//! is `no_std` with `alloc`; IO and file formats live in the CLI crate.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod cells;
pub mod g2;
pub mod gradedring;
pub mod homology;
pub mod specseq;

pub use abelian::{FGAbelianGroup, GroupHom, IntegerMatrix};
pub use cells::ChainComplex;
pub use homology::HomologyTable;
