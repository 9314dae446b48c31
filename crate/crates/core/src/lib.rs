//! Distance-based invariants, extremal 2-connected graph families and
//! exhaustive verification of Wiener-index orderings.

pub mod canon;
pub mod closed_forms;
pub mod enumeration;
mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod verification;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{
    all_pairs_distances, bfs_distances, is_two_connected, new_graph, DistanceMatrix, Graph,
};
pub use graph6::{decode_graph6, encode_graph6};
pub use invariants::wiener;
