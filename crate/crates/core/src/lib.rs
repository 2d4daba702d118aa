//! Exact connectivity systems, tangles and partial branch-decompositions
//! for small matroids and graphs.
//!
//! Everything here is exhaustive: ground sets are capped at 16 elements
//! and every routine enumerates subsets directly. The central checks are
//! that an element of a matroid (or a vertex of a graph, under pivot- and
//! vertex-minors) can always be removed without splitting a tangle, both
//! through the adherence criterion and by direct tangle enumeration.

pub mod branch;
pub mod catalog;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod matroid;
pub mod subset;
pub mod synthetic;
pub mod system;
pub mod tangle;
pub mod verify;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use matroid::Matroid;
pub use subset::{GroundSet, SubsetMask};
pub use synthetic::SyntheticSystem;
pub use system::ConnectivitySystem;
pub use tangle::Tangle;
