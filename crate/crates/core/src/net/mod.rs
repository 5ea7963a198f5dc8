//! Players, networks, partitions, spanning trees, cycles and relabelings.

mod coalition;
mod network;
mod partition;
mod permutation;
mod tree;

pub use coalition::Coalition;
pub use network::{Network, MAX_PLAYERS};
pub use partition::{enumerate_partitions, partition_by_graph, Partition};
pub(crate) use partition::partitions_of;
pub use permutation::Permutation;
pub use tree::{all_cycles, fundamental_cycle, minimal_index_bfs, spanning_forests, BfsTree, Cycle};

/// Players are labelled `1..=n`.
pub type Player = usize;
