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

//! Directed triangle partitions: a validator for arbitrary digraphs and an
//! exhaustive solver for tiny ones.

use rustc_hash::FxHashMap;

use crate::distance::ItemGraph;
use crate::error::{Error, Result};

/// Result of [`validate_triangle_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCheck {
    pub valid: bool,
    /// First problem found, if any.
    pub defect: Option<String>,
    /// Edges looked up while checking.
    pub edge_checks: usize,
}

impl TriangleCheck {
    fn fail(defect: String, edge_checks: usize) -> Self {
        TriangleCheck {
            valid: false,
            defect: Some(defect),
            edge_checks,
        }
    }
}

/// Checks that every part is a directed 3-cycle of the graph and that the
/// parts cover each edge exactly once. Parallel edges count separately.
pub fn validate_triangle_partition(edges: &[(usize, usize)], parts: &[Vec<usize>]) -> TriangleCheck {
    let mut available: FxHashMap<(usize, usize), usize> = FxHashMap::default();
    for &e in edges {
        *available.entry(e).or_default() += 1;
    }
    let mut checks = 0;
    for (k, part) in parts.iter().enumerate() {
        if part.len() != 3 {
            return TriangleCheck::fail(format!("part {k} has {} vertices, not 3", part.len()), checks);
        }
        for t in 0..3 {
            let e = (part[t], part[(t + 1) % 3]);
            checks += 1;
            match available.get_mut(&e) {
                Some(0) => {
                    return TriangleCheck::fail(format!("edge {} -> {} is covered twice", e.0, e.1), checks)
                }
                Some(c) => *c -= 1,
                None => {
                    return TriangleCheck::fail(
                        format!("part {k} uses {} -> {}, which is not an edge", e.0, e.1),
                        checks,
                    )
                }
            }
        }
    }
    for &e in edges {
        checks += 1;
        if available[&e] > 0 {
            return TriangleCheck::fail(format!("edge {} -> {} is not covered", e.0, e.1), checks);
        }
    }
    TriangleCheck {
        valid: true,
        defect: None,
        edge_checks: checks,
    }
}

/// Whether the graph has a loop or a pair of opposite edges.
pub fn has_short_cycles(edges: &[(usize, usize)]) -> bool {
    let set: rustc_hash::FxHashSet<(usize, usize)> = edges.iter().copied().collect();
    edges.iter().any(|&(u, v)| u == v || set.contains(&(v, u)))
}

/// Largest graph [`dtp_brute_force`] accepts.
pub const DTP_MAX_EDGES: usize = 30;

/// Exact search for a partition of the edges into directed triangles,
/// branching on the lowest uncovered edge. Returns the triangles as edge
/// index triples.
pub fn dtp_brute_force(g: &ItemGraph, node_budget: usize) -> Result<Option<Vec<[usize; 3]>>> {
    let m = g.edges.len();
    if m > DTP_MAX_EDGES {
        return Err(Error::TooLarge(format!("{m} edges, at most {DTP_MAX_EDGES} supported")));
    }
    if !m.is_multiple_of(3) {
        return Ok(None);
    }
    let mut out = vec![Vec::new(); g.n];
    for (k, &(u, _)) in g.edges.iter().enumerate() {
        out[u].push(k);
    }
    let mut nodes = 0usize;
    let mut stack = Vec::new();
    let full = (1u64 << m) - 1;
    fn go(
        g: &ItemGraph,
        out: &[Vec<usize>],
        free: u64,
        stack: &mut Vec<[usize; 3]>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if free == 0 {
            return Ok(true);
        }
        let e = free.trailing_zeros() as usize;
        let (u, v) = g.edges[e];
        let rest = free & !(1u64 << e);
        for &f in &out[v] {
            if rest & (1u64 << f) == 0 {
                continue;
            }
            let w = g.edges[f].1;
            if w == u || w == v {
                continue;
            }
            for &h in &out[w] {
                if rest & (1u64 << h) == 0 || g.edges[h].1 != u {
                    continue;
                }
                stack.push([e, f, h]);
                if go(g, out, rest & !(1u64 << f) & !(1u64 << h), stack, nodes, budget)? {
                    return Ok(true);
                }
                stack.pop();
            }
        }
        Ok(false)
    }
    let found = go(g, &out, full, &mut stack, &mut nodes, node_budget)?;
    Ok(found.then_some(stack))
}
