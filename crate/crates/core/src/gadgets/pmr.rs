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

//! Perfect matching reconfiguration as an EF1 reachability instance.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};

/// Largest side size [`brute_force_pmr`] accepts.
pub const PMR_MAX_SIDE: usize = 8;

/// A balanced bipartite graph on `p_0..p_{v-1}` and `q_0..q_{v-1}` with two
/// perfect matchings. `w0[i]` is the `q` matched to `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatchingInstance {
    pub v: usize,
    pub edges: Vec<(usize, usize)>,
    pub w0: Vec<usize>,
    pub w: Vec<usize>,
}

impl BipartiteMatchingInstance {
    pub fn new(v: usize, edges: Vec<(usize, usize)>, w0: Vec<usize>, w: Vec<usize>) -> Result<Self> {
        let b = BipartiteMatchingInstance { v, edges, w0, w };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.v == 0 {
            return Err(Error::InvalidMatching("the graph has no vertices".into()));
        }
        if let Some(&(p, q)) = self.edges.iter().find(|&&(p, q)| p >= self.v || q >= self.v) {
            return Err(Error::InvalidMatching(format!("edge ({p}, {q}) is out of range")));
        }
        let edges = self.edge_set();
        for (name, m) in [("W0", &self.w0), ("W", &self.w)] {
            if m.len() != self.v {
                return Err(Error::InvalidMatching(format!("{name} has {} entries", m.len())));
            }
            let mut hit = vec![false; self.v];
            for (p, &q) in m.iter().enumerate() {
                if q >= self.v || std::mem::replace(&mut hit[q], true) {
                    return Err(Error::InvalidMatching(format!("{name} is not a permutation")));
                }
                if !edges.contains(&(p, q)) {
                    return Err(Error::InvalidMatching(format!("{name} uses a non-edge ({p}, {q})")));
                }
            }
        }
        Ok(())
    }

    fn edge_set(&self) -> FxHashSet<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Whether `p_i` and `q_k` are adjacent.
    pub fn adjacent(&self, i: usize, k: usize) -> bool {
        self.edges.contains(&(i, k))
    }
}

/// Agent 0 values nothing and holds `r1..r4`; agent `i` holds `p_i` and its
/// matched `q`, valuing `p_i` and its neighbors at 3 and each `r` at 2.
/// Goods are named `p1..pv`, `q1..qv`, `r1..r4`.
pub fn gen_pmr_instance(b: &BipartiteMatchingInstance) -> Result<(Instance, Allocation, Allocation)> {
    b.validate()?;
    let v = b.v;
    let goods: Vec<String> = (1..=v)
        .map(|i| format!("p{i}"))
        .chain((1..=v).map(|k| format!("q{k}")))
        .chain((1..=4).map(|r| format!("r{r}")))
        .collect();
    let edges = b.edge_set();
    let mut rows = vec![vec![0u64; 2 * v + 4]];
    for i in 0..v {
        let mut row = vec![0u64; 2 * v + 4];
        row[i] = 3;
        for k in 0..v {
            if edges.contains(&(i, k)) {
                row[v + k] = 3;
            }
        }
        row[2 * v..].fill(2);
        rows.push(row);
    }
    let inst = Instance::from_integers(goods, rows)?;
    let alloc = |m: &[usize]| {
        let mut bundles = vec![(2 * v..2 * v + 4).collect::<Vec<_>>()];
        bundles.extend((0..v).map(|i| vec![i, v + m[i]]));
        Allocation::from_bundles(2 * v + 4, &bundles)
    };
    Ok((inst, alloc(&b.w0)?, alloc(&b.w)?))
}

/// Whether `W` is reachable from `W0` by flips on alternating 4-cycles.
pub fn brute_force_pmr(b: &BipartiteMatchingInstance) -> Result<bool> {
    b.validate()?;
    if b.v > PMR_MAX_SIDE {
        return Err(Error::TooLarge(format!("side size {} above {PMR_MAX_SIDE}", b.v)));
    }
    let edges = b.edge_set();
    let mut seen: FxHashMap<Vec<usize>, ()> = FxHashMap::default();
    let mut queue = VecDeque::from([b.w0.clone()]);
    seen.insert(b.w0.clone(), ());
    while let Some(m) = queue.pop_front() {
        if m == b.w {
            return Ok(true);
        }
        for i in 0..b.v {
            for j in i + 1..b.v {
                if edges.contains(&(i, m[j])) && edges.contains(&(j, m[i])) {
                    let mut next = m.clone();
                    next.swap(i, j);
                    if seen.insert(next.clone(), ()).is_none() {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Every perfect matching of `b`'s graph, in lexicographic order.
pub fn perfect_matchings(v: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn extend(i: usize, v: usize, adj: &[Vec<bool>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == v {
            out.push(cur.clone());
            return;
        }
        for k in 0..v {
            if adj[i][k] && !used[k] {
                used[k] = true;
                cur.push(k);
                extend(i + 1, v, adj, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut adj = vec![vec![false; v]; v];
    for &(p, q) in edges {
        adj[p][q] = true;
    }
    let mut out = Vec::new();
    extend(0, v, &adj, &mut vec![false; v], &mut Vec::new(), &mut out);
    out
}
