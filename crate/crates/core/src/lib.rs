//! Lattice polytopes, their dotted graphs, the deformation moves I–IV and a
//! census that checks the dot lemmas and reducibility theorems by brute force.

pub mod census;
pub mod diagram;
pub mod extract;
pub mod fixtures;
pub mod io;
pub mod par;
pub mod polytope;
pub mod realize;
pub mod rewrite;

pub use diagram::{DiagramError, DottedGraph};
pub use extract::{extract, ExtractionTrace};
pub use realize::{find_realization, RealizeBounds, RealizeError};
pub use polytope::{Corner, GridPoint, LatticePolytope, Mark, PolytopeComponent, PolytopeError, Probe};
