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

//! Reduction instances, known counterexamples and the triangle-partition
//! machinery built on the hexagonal torus `H_p`.

pub mod catalog;
pub mod dtp;
pub mod graphdist;
pub mod hp;
pub mod partition;
pub mod pmr;
pub mod threesat;

pub use catalog::{catalog, verify, CheckOutcome, Expectation, Fixture, CATALOG_NAMES};
pub use dtp::{dtp_brute_force, has_short_cycles, validate_triangle_partition, TriangleCheck};
pub use graphdist::gen_graph_distance_instance;
pub use hp::{select_patches, Hp, Patch, TriKind};
pub use partition::{gen_partition_instance, has_equal_split};
pub use pmr::{brute_force_pmr, gen_pmr_instance, perfect_matchings, BipartiteMatchingInstance};
pub use threesat::{
    build_hp, enumerate_tf_triangles, gen_threesat_dtp, partition_from_assignment, Cnf3Formula,
    GadgetGraph, JoinKind, Literal, PartitionOutcome,
};
