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

//! Random fixtures and naive reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use ef1reach::{Allocation, Instance};
use rand::seq::SliceRandom;
use rand::Rng;

/// EF1 straight from the definition: for every non-empty `A_j` some good
/// can be dropped so that `i` no longer envies `j`.
pub fn naive_ef1(inst: &Instance, owners: &[usize]) -> bool {
    let n = inst.agents();
    let value = |i: usize, j: usize, skip: Option<usize>| -> u128 {
        (0..owners.len())
            .filter(|&g| owners[g] == j && Some(g) != skip)
            .map(|g| u128::from(inst.utility(i, g)))
            .sum()
    };
    (0..n).all(|i| {
        (0..n).filter(|&j| j != i).all(|j| {
            let bundle: Vec<usize> = (0..owners.len()).filter(|&g| owners[g] == j).collect();
            bundle.is_empty() || bundle.iter().any(|&g| value(i, i, None) >= value(i, j, Some(g)))
        })
    })
}

pub fn owners(a: &Allocation) -> Vec<usize> {
    (0..a.goods()).map(|g| a.owner(g)).collect()
}

/// Plain BFS over owner vectors with exchanges and/or transfers, optionally
/// restricted to EF1 states. Returns the shortest path length.
pub fn naive_distance(
    inst: &Instance,
    from: &[usize],
    to: &[usize],
    exchanges: bool,
    transfers: bool,
    ef1_only: bool,
) -> Option<usize> {
    let n = inst.agents();
    let m = from.len();
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(from.to_vec(), 0);
    queue.push_back(from.to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if cur == to {
            return Some(d);
        }
        let mut next = Vec::new();
        if exchanges {
            for g in 0..m {
                for h in g + 1..m {
                    if cur[g] != cur[h] {
                        let mut s = cur.clone();
                        s.swap(g, h);
                        next.push(s);
                    }
                }
            }
        }
        if transfers {
            for g in 0..m {
                for j in 0..n {
                    if j != cur[g] {
                        let mut s = cur.clone();
                        s[g] = j;
                        next.push(s);
                    }
                }
            }
        }
        for s in next {
            if ef1_only && !naive_ef1(inst, &s) {
                continue;
            }
            if !dist.contains_key(&s) {
                dist.insert(s.clone(), d + 1);
                queue.push_back(s);
            }
        }
    }
    None
}

/// Whether some sub-multiset sums to half the total, by trying all subsets.
pub fn subset_split(t: &[u64]) -> bool {
    let total: u64 = t.iter().sum();
    total.is_multiple_of(2) && (0u32..1 << t.len()).any(|mask| {
        let s: u64 = (0..t.len()).filter(|&i| mask >> i & 1 == 1).map(|i| t[i]).sum();
        2 * s == total
    })
}

pub fn random_rows<R: Rng>(rng: &mut R, n: usize, m: usize, max: u64) -> Vec<Vec<u64>> {
    (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..=max)).collect()).collect()
}

pub fn random_owners<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    (0..m).map(|_| rng.gen_range(0..n)).collect()
}

/// A random permutation of `owners`, so the size vector is kept.
pub fn shuffled<R: Rng>(rng: &mut R, owners: &[usize]) -> Vec<usize> {
    let mut v = owners.to_vec();
    v.shuffle(rng);
    v
}

/// A random degree-balanced multigraph on `n` vertices built from closed
/// walks, with at most `max_edges` edges.
pub fn random_balanced_graph<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    loop {
        let len = rng.gen_range(1..=n.max(1) + 1);
        if edges.len() + len > max_edges {
            break;
        }
        let start = rng.gen_range(0..n);
        let mut cur = start;
        for step in 0..len {
            let next = if step + 1 == len { start } else { rng.gen_range(0..n) };
            edges.push((cur, next));
            cur = next;
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    edges.shuffle(rng);
    edges
}

pub fn has_short_cycle(edges: &[(usize, usize)]) -> bool {
    let set: HashSet<_> = edges.iter().copied().collect();
    edges.iter().any(|&(u, v)| u == v || set.contains(&(v, u)))
}

pub fn is_balanced(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut b = vec![0i64; n];
    for &(u, v) in edges {
        b[u] += 1;
        b[v] -= 1;
    }
    b.iter().all(|&x| x == 0)
}

/// Edge-disjoint-ish union of random simple cycles of length at least 3 on
/// `n` vertices, with at most `max_edges` edges. Balanced by construction.
pub fn random_cycle_union<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let verts: Vec<usize> = (0..n).collect();
    while edges.len() + 3 <= max_edges {
        let len = rng.gen_range(3..=n.min(max_edges - edges.len()));
        let cyc: Vec<usize> = verts.choose_multiple(rng, len).copied().collect();
        for t in 0..len {
            edges.push((cyc[t], cyc[(t + 1) % len]));
        }
        if rng.gen_bool(0.25) {
            break;
        }
    }
    edges
}
