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

//! Allocations whose item graph is a given directed multigraph.

use crate::distance::ItemGraph;
use crate::error::Result;
use crate::model::{numbered_goods, Allocation, Instance};

/// One agent per vertex and one zero-valued good `g{e+1}` per edge `e`: the
/// good starts with the edge's tail and ends with its head. A one-vertex
/// graph gets a second, empty agent so that the instance is valid.
pub fn gen_graph_distance_instance(g: &ItemGraph) -> Result<(Instance, Allocation, Allocation)> {
    g.check_balanced()?;
    let n = g.n.max(2);
    let m = g.edges.len();
    let inst = Instance::from_integers(numbered_goods(m), vec![vec![0; m]; n])?;
    let tails: Vec<usize> = g.edges.iter().map(|e| e.0).collect();
    let heads: Vec<usize> = g.edges.iter().map(|e| e.1).collect();
    Ok((inst, Allocation::from_owners(n, &tails)?, Allocation::from_owners(n, &heads)?))
}
