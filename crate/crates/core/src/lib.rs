// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Reachability between EF1 allocations of indivisible goods under
//! exchanges and transfers.
//!
//! The crate covers exact instances and the EF1 test ([`model`]), exhaustive
//! search over allocation graphs ([`search`]), exchange distance through
//! cycle partitions of the item graph ([`distance`]), constructive path
//! algorithms for tractable utility classes ([`polypaths`]) and generators
//! for hardness gadgets and known counterexamples ([`gadgets`]).

pub mod distance;
pub mod error;
pub mod gadgets;
pub mod model;
pub mod polypaths;
pub mod search;

pub use distance::{
    build_item_graph, distance_via_cycles, greedy_circuit_partition, max_cycle_partition,
    path_from_partition, CircuitPartition, ItemGraph,
};
pub use error::{Error, Result};
pub use model::{
    apply_move, canonical_key, ef1_violations, is_ef1, normalize_instance, numbered_goods, Agent,
    Allocation, AllocationKey, Good, Instance, Move, MoveSet,
};
pub use polypaths::{
    path_identical_binary, path_three_heavy_xt, path_two_binary, path_two_identical,
    path_xt_via_dummies, BaseAlgorithm, Construction,
};
pub use search::{
    bfs_distance, ef1_component_connected, ef1_reach, enumerate_allocations, neighbors,
    optimal_ef1_path, verify_path, Connectivity, Distance, PathResult, SearchBudget, SearchStats,
};
