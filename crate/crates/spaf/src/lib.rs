//! Shortest paths for all flows on directed unit-cost graphs.
//!
//! Every edge has a positive capacity; a path carries the minimum capacity
//! along it. For each vertex pair the full answer is a [`FlowStaircase`]:
//! the Pareto frontier of (path length, supported flow). The crate provides
//!
//! * [`bottleneck`] — the single bottleneck value of the whole network,
//! * [`sssp`] — staircases from one source via an incrementally maintained
//!   shortest-path tree,
//! * [`apsp`] — staircases for all pairs via (max,min) matrix products
//!   followed by bridged (min,+) squaring,
//! * [`oracle`] — brute-force reference solvers and the comparison harness
//!   used to validate everything above.

pub mod apsp;
pub mod bottleneck;
pub mod capacity;
pub mod error;
pub mod graph;
pub mod jsonio;
pub mod matrix;
pub mod oracle;
pub mod semiring;
pub mod sssp;
pub mod staircase;

pub use capacity::Capacity;
pub use error::{Result, SpafError};
pub use graph::{generate_random, FlowRank, Graph};
pub use staircase::FlowStaircase;
