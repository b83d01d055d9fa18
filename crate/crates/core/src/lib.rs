//! Extremal induced-edge structure of the graph `G(n,3,1)`.
//!
//! Vertices are the 3-element subsets of `{1..n}`; two vertices are adjacent
//! exactly when they share one element. The crate provides:
//!
//! * [`graph`]: vertex encoding, adjacency and exact edge counting,
//! * [`structure`]: independent sets, type decompositions, star sets and diameters,
//! * [`bounds`]: closed-form evaluators for the known lower and upper bounds on `r(l)`,
//! * [`peeling`]: iterated extraction of independent sets with `B_i` histograms,
//! * [`oracle`]: exact `r(l)` at small `n` and upper-bound constructions.

pub mod bitset;
pub mod bounds;
pub mod combinatorics;
mod error;
pub mod graph;
pub mod oracle;
pub mod peeling;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{GraphParams, Vertex, VertexSet};
