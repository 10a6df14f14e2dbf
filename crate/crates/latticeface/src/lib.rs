//! Command-line front end and JSON file format for `latticeface-core`.

pub mod cli;
pub mod document;

pub use document::{parse_polytope, PolytopeDocument};
