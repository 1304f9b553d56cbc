//! k-truss decomposition, triangle enumeration and extremal truss constructions.
//!
//! * [`graph`]: compressed adjacency graphs, parsing, subgraphs, degeneracy.
//! * [`triangles`]: exactly-once triangle enumeration and exact counts.
//! * [`peeler`]: full truss decomposition by threshold peeling.
//! * [`witness`]: truncated decomposition driven by randomized witness sums.
//! * [`extremal`]: clique chains, critical trusses and torus constructions.
//! * [`verify`]: brute-force oracles, criticality tests and bound reports.

pub mod graph;
pub mod labels;
pub mod triangles;
pub mod peeler;
pub mod witness;
pub mod extremal;
pub mod verify;

pub use graph::{EdgeId, EdgeSet, Graph, GraphError, Vertex};
pub use labels::TrussLabels;
