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

//! Workloads shared by the benchmarks.

use ef1reach::gadgets::{gen_threesat_dtp, Cnf3Formula, GadgetGraph};
use ef1reach::{Allocation, Instance, ItemGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random integer rows in `0..=max`.
pub fn random_instance(agents: usize, goods: usize, max: u64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..agents)
        .map(|_| (0..goods).map(|_| rng.gen_range(0..=max)).collect())
        .collect();
    Instance::with_numbered_goods(rows).expect("valid rows")
}

/// Round-robin by the picker's favourite remaining good.
pub fn round_robin(inst: &Instance) -> Allocation {
    let n = inst.agents();
    let mut left: Vec<usize> = (0..inst.goods()).collect();
    let mut owners = vec![0; inst.goods()];
    let mut turn = 0;
    while !left.is_empty() {
        let (k, _) = left
            .iter()
            .enumerate()
            .max_by_key(|&(k, &g)| (inst.utility(turn, g), std::cmp::Reverse(k)))
            .unwrap();
        owners[left.remove(k)] = turn;
        turn = (turn + 1) % n;
    }
    Allocation::from_owners(n, &owners).expect("valid owners")
}

/// Two agents with identical utilities over `pairs` pairs of equal-valued
/// goods. The source gives agent 1 the first of each pair and the target
/// the second, so both endpoints are envy-free and `pairs` exchanges apart.
pub fn paired_identical(pairs: usize, seed: u64) -> (Instance, Allocation, Allocation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        let v = rng.gen_range(1..=50);
        row.extend([v, v]);
    }
    let goods = ef1reach::numbered_goods(row.len());
    let inst = Instance::identical(2, goods, row).expect("valid row");
    let a: Vec<usize> = (0..2 * pairs).map(|g| g % 2).collect();
    let b: Vec<usize> = a.iter().map(|&o| 1 - o).collect();
    (
        inst,
        Allocation::from_owners(2, &a).unwrap(),
        Allocation::from_owners(2, &b).unwrap(),
    )
}

/// Union of random directed cycles of length 2..=`max_len` on `n` vertices.
pub fn cycle_union(n: usize, cycles: usize, max_len: usize, seed: u64) -> ItemGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let verts: Vec<usize> = (0..n).collect();
    for _ in 0..cycles {
        let len = rng.gen_range(2..=max_len.min(n));
        let c: Vec<usize> = verts.choose_multiple(&mut rng, len).copied().collect();
        for k in 0..len {
            edges.push((c[k], c[(k + 1) % len]));
        }
    }
    ItemGraph::new(n, edges).expect("valid graph")
}

/// Single-clause formula over three variables, expanded at torus size `p`.
pub fn small_gadget(p: usize) -> GadgetGraph {
    let f = Cnf3Formula::new(3, &[vec![(0, true), (1, false), (2, true)]]).expect("valid formula");
    gen_threesat_dtp(&f, Some(p)).expect("gadget builds")
}
