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

//! The item multigraph of two allocations and its partitions into cycles.
//!
//! The exchange distance between two allocations with equal size vectors is
//! the number of goods minus the largest number of cycles an edge partition
//! of their item graph can have.

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Move};

/// Directed multigraph on `n` vertices; edge `k` is `edges[k] = (tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Edge-disjoint closed circuits, as edge-index sequences, covering every
/// edge once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircuitPartition {
    pub circuits: Vec<Vec<usize>>,
}

impl ItemGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::InvalidPartition(format!("edge ({u}, {v}) leaves the vertex range")));
        }
        Ok(ItemGraph { n, edges })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Returns the first vertex whose indegree differs from its outdegree.
    pub fn check_balanced(&self) -> Result<()> {
        let mut balance = vec![0i64; self.n];
        for &(u, v) in &self.edges {
            balance[u] += 1;
            balance[v] -= 1;
        }
        match balance.iter().position(|&b| b != 0) {
            Some(v) => Err(Error::Unbalanced(v)),
            None => Ok(()),
        }
    }

    fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (k, &(u, _)) in self.edges.iter().enumerate() {
            out[u].push(k);
        }
        out
    }
}

impl CircuitPartition {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Checks coverage and closure against `g`.
    pub fn validate(&self, g: &ItemGraph) -> Result<()> {
        let mut used = vec![false; g.edges.len()];
        for (c, circuit) in self.circuits.iter().enumerate() {
            if circuit.is_empty() {
                return Err(Error::InvalidPartition(format!("circuit {c} is empty")));
            }
            for (pos, &e) in circuit.iter().enumerate() {
                if e >= used.len() {
                    return Err(Error::InvalidPartition(format!("edge {e} does not exist")));
                }
                if std::mem::replace(&mut used[e], true) {
                    return Err(Error::InvalidPartition(format!("edge {e} is used twice")));
                }
                let next = circuit[(pos + 1) % circuit.len()];
                if next < g.edges.len() && g.edges[e].1 != g.edges[next].0 {
                    return Err(Error::InvalidPartition(format!("circuit {c} breaks after edge {e}")));
                }
            }
        }
        if let Some(e) = used.iter().position(|u| !u) {
            return Err(Error::InvalidPartition(format!("edge {e} is not covered")));
        }
        Ok(())
    }

    /// Rotates each circuit to start at its smallest edge and orders circuits
    /// by that edge.
    pub fn canonicalize(&mut self) {
        for c in &mut self.circuits {
            if let Some(pos) = c.iter().enumerate().min_by_key(|(_, &e)| e).map(|(p, _)| p) {
                c.rotate_left(pos);
            }
        }
        self.circuits.sort_by_key(|c| c.first().copied());
    }
}

/// Edge `k` runs from the owner of good `k` in `a` to its owner in `b`.
pub fn build_item_graph(a: &Allocation, b: &Allocation) -> Result<ItemGraph> {
    if a.agents() != b.agents() || a.goods() != b.goods() {
        return Err(Error::ShapeMismatch("allocations of different shapes".into()));
    }
    if a.size_vector() != b.size_vector() {
        return Err(Error::SizeVectorMismatch);
    }
    let edges = (0..a.goods()).map(|g| (a.owner(g), b.owner(g))).collect();
    Ok(ItemGraph { n: a.agents(), edges })
}

/// Walks unused edges, lowest index first, and cuts out a cycle each time
/// the walk revisits a vertex.
pub fn greedy_circuit_partition(g: &ItemGraph) -> Result<CircuitPartition> {
    g.check_balanced()?;
    let out = g.out_lists();
    let mut next_out = vec![0usize; g.n];
    let mut used = vec![false; g.edges.len()];
    let mut on_path: Vec<Option<usize>> = vec![None; g.n];
    let mut part = CircuitPartition::default();
    for start in 0..g.edges.len() {
        if used[start] {
            continue;
        }
        let mut path: Vec<usize> = Vec::new();
        let mut at = g.edges[start].0;
        on_path[at] = Some(0);
        loop {
            while next_out[at] < out[at].len() && used[out[at][next_out[at]]] {
                next_out[at] += 1;
            }
            let Some(&e) = out[at].get(next_out[at]) else {
                break;
            };
            used[e] = true;
            path.push(e);
            at = g.edges[e].1;
            if let Some(pos) = on_path[at] {
                let cycle: Vec<usize> = path.drain(pos..).collect();
                for &c in &cycle[1..] {
                    on_path[g.edges[c].0] = None;
                }
                part.circuits.push(cycle);
                if path.is_empty() {
                    on_path[at] = None;
                    break;
                }
            } else {
                on_path[at] = Some(path.len());
            }
        }
        for &e in &path {
            on_path[g.edges[e].0] = None;
        }
    }
    part.canonicalize();
    Ok(part)
}

struct MaxCycles<'a> {
    g: &'a ItemGraph,
    out: Vec<Vec<usize>>,
    best: usize,
    best_cycles: Vec<Vec<usize>>,
    stack: Vec<Vec<usize>>,
    nodes: usize,
    budget: usize,
}

impl MaxCycles<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    fn search(&mut self, uncovered: u128) -> Result<()> {
        self.tick()?;
        if uncovered == 0 {
            if self.stack.len() > self.best {
                self.best = self.stack.len();
                self.best_cycles = self.stack.clone();
            }
            return Ok(());
        }
        let remaining = uncovered.count_ones() as usize;
        if self.stack.len() + remaining / 2 <= self.best {
            return Ok(());
        }
        let e = uncovered.trailing_zeros() as usize;
        let (u, v) = self.g.edges[e];
        let mut cycles = Vec::new();
        let mut visited = vec![false; self.g.n];
        visited[v] = true;
        let mut path = vec![e];
        self.cycles_through(u, v, uncovered & !(1u128 << e), &mut visited, &mut path, &mut cycles)?;
        for cycle in cycles {
            let mask = cycle.iter().fold(0u128, |acc, &c| acc | (1u128 << c));
            self.stack.push(cycle);
            self.search(uncovered & !mask)?;
            self.stack.pop();
        }
        Ok(())
    }

    /// Simple paths from `at` back to `home` over `free` edges. Among
    /// parallel edges only the lowest free one is tried.
    fn cycles_through(
        &mut self,
        home: usize,
        at: usize,
        free: u128,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if at == home {
            found.push(path.clone());
            return Ok(());
        }
        self.tick()?;
        let mut seen_heads: Vec<usize> = Vec::new();
        for idx in 0..self.out[at].len() {
            let f = self.out[at][idx];
            if free & (1u128 << f) == 0 {
                continue;
            }
            let w = self.g.edges[f].1;
            if (visited[w] && w != home) || seen_heads.contains(&w) {
                continue;
            }
            seen_heads.push(w);
            visited[w] = true;
            path.push(f);
            self.cycles_through(home, w, free & !(1u128 << f), visited, path, found)?;
            path.pop();
            if w != home {
                visited[w] = false;
            }
        }
        Ok(())
    }
}

/// Exact maximum number of cycles in an edge partition of `g`, with a
/// witness made of simple cycles. `node_budget` bounds the search tree.
pub fn max_cycle_partition(g: &ItemGraph, node_budget: usize) -> Result<(usize, CircuitPartition)> {
    g.check_balanced()?;
    let mut part = CircuitPartition::default();
    let mut rest: Vec<usize> = Vec::new();
    for (k, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            part.circuits.push(vec![k]);
        } else {
            rest.push(k);
        }
    }
    if rest.len() > 128 {
        return Err(Error::TooLarge(format!("{} non-loop edges, the exact solver handles 128", rest.len())));
    }
    if !rest.is_empty() {
        let sub = ItemGraph {
            n: g.n,
            edges: rest.iter().map(|&k| g.edges[k]).collect(),
        };
        let greedy = greedy_circuit_partition(&sub)?;
        let mut solver = MaxCycles {
            g: &sub,
            out: sub.out_lists(),
            best: greedy.len(),
            best_cycles: greedy.circuits,
            stack: Vec::new(),
            nodes: 0,
            budget: node_budget,
        };
        let all = if sub.edges.len() == 128 {
            u128::MAX
        } else {
            (1u128 << sub.edges.len()) - 1
        };
        solver.search(all)?;
        for cycle in solver.best_cycles {
            part.circuits.push(cycle.into_iter().map(|k| rest[k]).collect());
        }
    }
    part.canonicalize();
    Ok((part.len(), part))
}

/// Exchange distance between `a` and `b`, computed from the item graph.
pub fn distance_via_cycles(inst: &Instance, a: &Allocation, b: &Allocation, node_budget: usize) -> Result<usize> {
    a.check_shape(inst)?;
    b.check_shape(inst)?;
    let g = build_item_graph(a, b)?;
    let (c, _) = max_cycle_partition(&g, node_budget)?;
    Ok(g.edge_count() - c)
}

/// Exchanges that turn `a` into `b`, one fewer than the length of each
/// circuit of `part`.
pub fn path_from_partition(a: &Allocation, b: &Allocation, part: &CircuitPartition) -> Result<Vec<Move>> {
    let g = build_item_graph(a, b)?;
    part.validate(&g)?;
    let mut moves = Vec::new();
    for circuit in &part.circuits {
        let base = g.edges[circuit[0]].0;
        for t in 1..circuit.len() {
            let holder = g.edges[circuit[t]].0;
            if holder == base {
                continue;
            }
            moves.push(Move::Exchange {
                i: base,
                j: holder,
                g: circuit[t - 1],
                h: circuit[t],
            });
        }
    }
    Ok(moves)
}
