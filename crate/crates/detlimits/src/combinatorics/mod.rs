//! Partitions, plane partitions, their point-configuration embeddings, RSK,
//! and exhaustive enumerators used as brute-force oracles.
//!
//! A partition `λ` is embedded in `ℤ` as `{λ_i − i : i ≥ 1}`; a plane partition
//! `π` is embedded in `ℤ × ½ℤ` as `{(i − j, π_{i,j} − (i + j − 1)/2)}`. Both
//! configurations are infinite; only their intersection with a finite window
//! is ever materialized.

mod enumerate;
mod partition;
mod plane;
mod rsk;
mod site;

pub use enumerate::{
    enumerate_partitions, enumerate_plane_partitions, partition_counts, plane_partition_counts,
    visit_partitions, visit_plane_partitions, PartitionIter, PlanePartitionIter,
};
pub use partition::{plancherel_dim, shur_map, Partition};
pub use plane::{pp_map, pp_window_contains, PlanePartition, PpWindow};
pub use rsk::rsk_shape;
pub use site::{LatticeSite, Pattern, SitePP};
