//! Cohomology of even-dimensional spaces with one isolated singular point,
//! over exact rationals.
//!
//! The library computes ordinary, compactly-supported and intersection
//! cohomology of a simple stratified space, assembles the four-term exact
//! sequence around the middle degree, builds the associated zig-zag object,
//! decides its self-duality by solving for a commuting isomorphism, and
//! emits per-degree dimension tables with verification verdicts.
//!
//! Input comes either from a triangulation (simplicial mode) or from Betti
//! numbers plus map ranks (rank mode) when triangulating the space is not
//! feasible.

pub mod docs;
pub mod error;
pub mod qlinalg;
pub mod report;
pub mod simplicial;
pub mod stratified;
pub mod stringy;
pub mod zigzag;

#[cfg(test)]
pub(crate) mod testfix;

pub use error::Error;
pub use qlinalg::{Rational, RationalMatrix, Subspace};

/// Per-degree dimensions of a graded vector space, indexed from degree 0.
pub type GradedDims = Vec<usize>;
