//! Fixture tables, problem files and the verification report behind the
//! `g2topo` binary.

pub mod app;
pub mod fixtures;
pub mod json;
pub mod planes;
pub mod problems;
pub mod report;
pub mod rings;
pub mod spaces;
