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

//! Breadth-first exploration of the exchange, transfer and
//! exchange-and-transfer graphs, optionally restricted to EF1 allocations.

use rustc_hash::FxHashMap;

use crate::distance::distance_via_cycles;
use crate::error::{Error, Result};
use crate::model::{scan_ef1, Agent, Allocation, Ef1Scratch, Instance, Move, MoveSet};

/// Limits on a single search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of stored states (always at least 1).
    pub max_states: usize,
    /// Paths longer than this are not explored.
    pub max_path_len: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 2_000_000,
            max_path_len: None,
        }
    }
}

impl SearchBudget {
    pub fn states(max_states: usize) -> Self {
        SearchBudget {
            max_states: max_states.max(1),
            max_path_len: None,
        }
    }
}

/// Outcome of a path search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathResult {
    Found { path: Vec<Move>, length: usize },
    /// No qualifying path exists.
    NotFound,
    /// The budget ran out before the search could decide.
    BudgetExhausted,
}

impl PathResult {
    fn found(path: Vec<Move>) -> Self {
        let length = path.len();
        PathResult::Found { path, length }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, PathResult::Found { .. })
    }

    pub fn length(&self) -> Option<usize> {
        match self {
            PathResult::Found { length, .. } => Some(*length),
            _ => None,
        }
    }

    pub fn path(&self) -> Option<&[Move]> {
        match self {
            PathResult::Found { path, .. } => Some(path),
            _ => None,
        }
    }
}

/// Outcome of an unrestricted distance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    Unreachable,
    BudgetExhausted,
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }
}

/// Counters reported alongside a search result.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// States stored, including the source.
    pub states: usize,
    /// States whose neighbors were generated.
    pub expanded: usize,
}

/// Connected components of the EF1 subgraph over a universe of allocations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
    /// Allocations in the universe, EF1 or not.
    pub universe: usize,
}

fn compact(inst: &Instance, alloc: &Allocation) -> Result<Vec<u8>> {
    alloc.check_shape(inst)?;
    if inst.agents() > usize::from(u8::MAX) {
        return Err(Error::TooLarge(format!("search supports at most 255 agents, got {}", inst.agents())));
    }
    Ok(alloc.raw_owners().iter().map(|&o| o as u8).collect())
}

fn expand(alloc_agents: usize, owner: &[u8]) -> Allocation {
    Allocation::from_raw(alloc_agents, owner.iter().map(|&o| u16::from(o)).collect())
}

fn bundles_of(n: usize, owner: &[u8]) -> Vec<Vec<usize>> {
    let mut bundles = vec![Vec::new(); n];
    for (g, &o) in owner.iter().enumerate() {
        bundles[usize::from(o)].push(g);
    }
    bundles
}

/// Calls `f` for every move out of `owner`, exchanges in `(i, j, g, h)`
/// order with `i < j`, then transfers in `(i, j, g)` order.
fn for_each_move(n: usize, owner: &[u8], moves: MoveSet, mut f: impl FnMut(Move)) {
    let bundles = bundles_of(n, owner);
    if moves.exchanges() {
        for i in 0..n {
            for j in i + 1..n {
                for &g in &bundles[i] {
                    for &h in &bundles[j] {
                        f(Move::Exchange { i, j, g, h });
                    }
                }
            }
        }
    }
    if moves.transfers() {
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for &g in &bundles[i] {
                    f(Move::Transfer { i, j, g });
                }
            }
        }
    }
}

fn apply_compact(owner: &mut [u8], mv: &Move) {
    match *mv {
        Move::Exchange { i, j, g, h } => {
            owner[g] = j as u8;
            owner[h] = i as u8;
        }
        Move::Transfer { j, g, .. } => owner[g] = j as u8,
    }
}

/// Every move out of `alloc` with the allocation it leads to.
pub fn neighbors(inst: &Instance, alloc: &Allocation, moves: MoveSet) -> Result<Vec<(Move, Allocation)>> {
    let owner = compact(inst, alloc)?;
    let mut out = Vec::new();
    let mut buf = owner.clone();
    for_each_move(inst.agents(), &owner, moves, |mv| {
        apply_compact(&mut buf, &mv);
        out.push((mv, expand(inst.agents(), &buf)));
        buf.copy_from_slice(&owner);
    });
    Ok(out)
}

enum Outcome {
    Found(Vec<Move>),
    /// Everything reachable within the depth limit was explored.
    Complete { truncated: bool },
    Budget,
}

struct Bfs<'a> {
    inst: &'a Instance,
    moves: MoveSet,
    ef1_only: bool,
    max_states: usize,
    depth_limit: Option<usize>,
}

impl Bfs<'_> {
    fn run(&self, from: Vec<u8>, target: &[u8], stats: &mut SearchStats) -> Outcome {
        let n = self.inst.agents();
        if from == target {
            stats.states = 1;
            return Outcome::Found(Vec::new());
        }
        let mut index: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
        let mut states: Vec<Vec<u8>> = vec![from.clone()];
        let mut parent: Vec<(u32, Option<Move>)> = vec![(0, None)];
        let mut depth: Vec<u32> = vec![0];
        index.insert(from, 0);
        let mut scratch = Ef1Scratch::default();
        let mut truncated = false;
        let mut head = 0usize;
        while head < states.len() {
            let d = depth[head] as usize;
            if self.depth_limit.is_some_and(|limit| d >= limit) {
                truncated = true;
                head += 1;
                continue;
            }
            stats.expanded += 1;
            let current = states[head].clone();
            let mut buf = current.clone();
            let mut hit = None;
            let mut over = false;
            for_each_move(n, &current, self.moves, |mv| {
                if hit.is_some() || over {
                    return;
                }
                apply_compact(&mut buf, &mv);
                if !index.contains_key(&buf)
                    && (!self.ef1_only || scan_ef1(self.inst, &buf, &mut scratch, |_, _| false))
                {
                    if states.len() >= self.max_states {
                        over = true;
                    } else {
                        let id = states.len() as u32;
                        index.insert(buf.clone(), id);
                        states.push(buf.clone());
                        parent.push((head as u32, Some(mv)));
                        depth.push(d as u32 + 1);
                        if buf.as_slice() == target {
                            hit = Some(id);
                        }
                    }
                }
                buf.copy_from_slice(&current);
            });
            stats.states = states.len();
            if let Some(mut id) = hit {
                let mut path = Vec::new();
                while let (p, Some(mv)) = parent[id as usize] {
                    path.push(mv);
                    id = p;
                }
                path.reverse();
                return Outcome::Found(path);
            }
            if over {
                return Outcome::Budget;
            }
            head += 1;
        }
        stats.states = states.len();
        Outcome::Complete { truncated }
    }
}

fn check_sizes(from: &Allocation, to: &Allocation, moves: MoveSet) -> Result<()> {
    if moves == MoveSet::ExchangeOnly && from.size_vector() != to.size_vector() {
        return Err(Error::SizeVectorMismatch);
    }
    Ok(())
}

/// Shortest path length in the unrestricted move graph.
pub fn bfs_distance(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<Distance> {
    let a = compact(inst, from)?;
    let b = compact(inst, to)?;
    check_sizes(from, to, moves)?;
    let bfs = Bfs {
        inst,
        moves,
        ef1_only: false,
        max_states: budget.max_states,
        depth_limit: budget.max_path_len,
    };
    Ok(match bfs.run(a, &b, &mut SearchStats::default()) {
        Outcome::Found(path) => Distance::Exact(path.len()),
        Outcome::Complete { truncated: false } => Distance::Unreachable,
        Outcome::Complete { truncated: true } | Outcome::Budget => Distance::BudgetExhausted,
    })
}

fn ef1_endpoints(inst: &Instance, from: &Allocation, to: &Allocation, moves: MoveSet) -> Result<(Vec<u8>, Vec<u8>)> {
    let a = compact(inst, from)?;
    let b = compact(inst, to)?;
    check_sizes(from, to, moves)?;
    let mut scratch = Ef1Scratch::default();
    if !scan_ef1(inst, &a, &mut scratch, |_, _| false) {
        return Err(Error::NotEf1("source"));
    }
    if !scan_ef1(inst, &b, &mut scratch, |_, _| false) {
        return Err(Error::NotEf1("target"));
    }
    Ok((a, b))
}

/// Shortest path through EF1 allocations only.
pub fn ef1_reach(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<PathResult> {
    ef1_reach_with_stats(inst, from, to, moves, budget).map(|(r, _)| r)
}

pub fn ef1_reach_with_stats(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<(PathResult, SearchStats)> {
    let (a, b) = ef1_endpoints(inst, from, to, moves)?;
    let bfs = Bfs {
        inst,
        moves,
        ef1_only: true,
        max_states: budget.max_states,
        depth_limit: budget.max_path_len,
    };
    let mut stats = SearchStats::default();
    let result = match bfs.run(a, &b, &mut stats) {
        Outcome::Found(path) => PathResult::found(path),
        Outcome::Complete { truncated: false } => PathResult::NotFound,
        Outcome::Complete { truncated: true } | Outcome::Budget => PathResult::BudgetExhausted,
    };
    Ok((result, stats))
}

/// An EF1 path whose length equals the unrestricted distance, if one exists.
pub fn optimal_ef1_path(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<PathResult> {
    optimal_ef1_path_with_stats(inst, from, to, moves, budget).map(|(r, _)| r)
}

pub fn optimal_ef1_path_with_stats(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<(PathResult, SearchStats)> {
    let (a, b) = ef1_endpoints(inst, from, to, moves)?;
    let unbounded = SearchBudget {
        max_path_len: None,
        ..budget
    };
    let target = if moves == MoveSet::ExchangeOnly {
        match distance_via_cycles(inst, from, to, budget.max_states) {
            Ok(d) => d,
            Err(Error::BudgetExceeded(_)) => return Ok((PathResult::BudgetExhausted, SearchStats::default())),
            Err(e) => return Err(e),
        }
    } else {
        match bfs_distance(inst, from, to, moves, unbounded)? {
            Distance::Exact(d) => d,
            Distance::Unreachable => return Ok((PathResult::NotFound, SearchStats::default())),
            Distance::BudgetExhausted => return Ok((PathResult::BudgetExhausted, SearchStats::default())),
        }
    };
    if budget.max_path_len.is_some_and(|limit| limit < target) {
        return Ok((PathResult::BudgetExhausted, SearchStats::default()));
    }
    let bfs = Bfs {
        inst,
        moves,
        ef1_only: true,
        max_states: budget.max_states,
        depth_limit: Some(target),
    };
    let mut stats = SearchStats::default();
    let result = match bfs.run(a, &b, &mut stats) {
        Outcome::Found(path) => PathResult::found(path),
        Outcome::Complete { .. } => PathResult::NotFound,
        Outcome::Budget => PathResult::BudgetExhausted,
    };
    Ok((result, stats))
}

/// Checks that replaying `path` from `from` ends at `to`, optionally
/// requiring every allocation on the way to be EF1.
pub fn verify_path(
    inst: &Instance,
    from: &Allocation,
    to: &Allocation,
    path: &[Move],
    require_ef1: bool,
) -> Result<()> {
    from.check_shape(inst)?;
    let mut current = from.clone();
    let mut scratch = Ef1Scratch::default();
    for (step, mv) in path.iter().enumerate() {
        if require_ef1 && !scan_ef1(inst, current.raw_owners(), &mut scratch, |_, _| false) {
            return Err(Error::InvalidPath(format!("allocation before step {step} is not EF1")));
        }
        current = current
            .apply(mv)
            .map_err(|e| Error::InvalidPath(format!("step {step}: {e}")))?;
    }
    if require_ef1 && !scan_ef1(inst, current.raw_owners(), &mut scratch, |_, _| false) {
        return Err(Error::InvalidPath("final allocation is not EF1".into()));
    }
    if &current != to {
        return Err(Error::InvalidPath("path does not end at the target".into()));
    }
    Ok(())
}

/// Number of allocations with size vector `sizes`, if it fits in `u128`.
pub fn multinomial(sizes: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &s in sizes {
        for k in 1..=s as u128 {
            placed += 1;
            // C(placed, k) built incrementally stays integral.
            total = total.checked_mul(placed)? / k;
        }
    }
    Some(total)
}

/// Allocations with the given size vector, in increasing canonical-key order.
pub fn enumerate_allocations(inst: &Instance, sizes: &[usize]) -> Result<SizedAllocations> {
    if sizes.len() != inst.agents() || sizes.iter().sum::<usize>() != inst.goods() {
        return Err(Error::Precondition(format!(
            "size vector {sizes:?} does not fit {} agents and {} goods",
            inst.agents(),
            inst.goods()
        )));
    }
    if inst.agents() > usize::from(u8::MAX) {
        return Err(Error::TooLarge(format!("{} agents", inst.agents())));
    }
    let mut first = Vec::with_capacity(inst.goods());
    for (agent, &s) in sizes.iter().enumerate() {
        first.extend(std::iter::repeat_n(agent as u8, s));
    }
    Ok(SizedAllocations {
        agents: inst.agents(),
        next: Some(first),
    })
}

/// Iterator returned by [`enumerate_allocations`].
#[derive(Debug, Clone)]
pub struct SizedAllocations {
    agents: usize,
    next: Option<Vec<u8>>,
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl Iterator for SizedAllocations {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(expand(self.agents, &current))
    }
}

fn odometer(v: &mut [u8], n: usize) -> bool {
    for x in v.iter_mut().rev() {
        if usize::from(*x) + 1 < n {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Components of the subgraph induced by EF1 allocations. With `sizes` the
/// universe is every allocation of that size vector (exchange-only moves);
/// without it, every one of the `n^m` allocations.
pub fn ef1_component_connected(
    inst: &Instance,
    sizes: Option<&[usize]>,
    moves: MoveSet,
    budget: SearchBudget,
) -> Result<Connectivity> {
    let n = inst.agents();
    let m = inst.goods();
    if n > usize::from(u8::MAX) {
        return Err(Error::TooLarge(format!("{n} agents")));
    }
    if sizes.is_some() && moves != MoveSet::ExchangeOnly {
        return Err(Error::Precondition(
            "a fixed size vector only applies to exchange-only moves".into(),
        ));
    }
    let universe = match sizes {
        Some(s) => {
            let _ = enumerate_allocations(inst, s)?;
            multinomial(s)
        }
        None => (n as u128).checked_pow(m as u32),
    };
    let universe = match universe {
        Some(u) if u <= budget.max_states as u128 => u as usize,
        _ => return Err(Error::BudgetExceeded(budget.max_states)),
    };
    let mut scratch = Ef1Scratch::default();
    let mut states: Vec<Vec<u8>> = Vec::new();
    let mut push = |owner: &[u8]| {
        if scan_ef1(inst, owner, &mut scratch, |_, _| false) {
            states.push(owner.to_vec());
        }
    };
    match sizes {
        Some(s) => {
            let mut owner: Vec<u8> = Vec::with_capacity(m);
            for (agent, &c) in s.iter().enumerate() {
                owner.extend(std::iter::repeat_n(agent as u8, c));
            }
            loop {
                push(&owner);
                if !next_permutation(&mut owner) {
                    break;
                }
            }
        }
        None => {
            let mut owner = vec![0u8; m];
            loop {
                push(&owner);
                if !odometer(&mut owner, n) {
                    break;
                }
            }
        }
    }
    let index: FxHashMap<&[u8], u32> = states
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_slice(), k as u32))
        .collect();
    let mut uf = UnionFind::new(states.len());
    let mut buf = Vec::with_capacity(m);
    for (k, owner) in states.iter().enumerate() {
        buf.clear();
        buf.extend_from_slice(owner);
        for_each_move(n, owner, moves, |mv| {
            apply_compact(&mut buf, &mv);
            if let Some(&other) = index.get(buf.as_slice()) {
                uf.union(k as u32, other);
            }
            buf.copy_from_slice(owner);
        });
    }
    let mut counts: FxHashMap<u32, usize> = FxHashMap::default();
    for k in 0..states.len() as u32 {
        *counts.entry(uf.find(k)).or_default() += 1;
    }
    let mut component_sizes: Vec<usize> = counts.into_values().collect();
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Connectivity {
        connected: component_sizes.len() <= 1,
        component_sizes,
        universe,
    })
}

/// Every EF1 allocation with the given size vector.
pub fn ef1_allocations(inst: &Instance, sizes: &[usize]) -> Result<Vec<Allocation>> {
    let mut scratch = Ef1Scratch::default();
    Ok(enumerate_allocations(inst, sizes)?
        .filter(|a| scan_ef1(inst, a.raw_owners(), &mut scratch, |_, _| false))
        .collect())
}

/// Agents whose bundles differ between the two allocations.
pub fn differing_agents(a: &Allocation, b: &Allocation) -> Vec<Agent> {
    let mut out: Vec<Agent> = (0..a.goods())
        .filter(|&g| a.owner(g) != b.owner(g))
        .flat_map(|g| [a.owner(g), b.owner(g)])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::numbered_goods;

    fn alloc(m: usize, bundles: &[&[usize]]) -> Allocation {
        let b: Vec<Vec<usize>> = bundles.iter().map(|b| b.iter().map(|g| g - 1).collect()).collect();
        Allocation::from_bundles(m, &b).unwrap()
    }

    fn zero(n: usize, m: usize) -> Instance {
        Instance::from_integers(numbered_goods(m), vec![vec![0; m]; n]).unwrap()
    }

    #[test]
    fn neighbor_counts() {
        let inst = zero(2, 2);
        let a = alloc(2, &[&[1], &[2]]);
        assert_eq!(neighbors(&inst, &a, MoveSet::ExchangeOnly).unwrap().len(), 1);
        let inst = zero(3, 6);
        let a = alloc(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(neighbors(&inst, &a, MoveSet::ExchangeOnly).unwrap().len(), 12);
        assert_eq!(neighbors(&inst, &a, MoveSet::TransferOnly).unwrap().len(), 12);
        assert_eq!(neighbors(&inst, &a, MoveSet::ExchangeAndTransfer).unwrap().len(), 24);
        let inst = zero(2, 8);
        let a = alloc(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let ns = neighbors(&inst, &a, MoveSet::ExchangeOnly).unwrap();
        assert_eq!(ns.len(), 16);
        assert_eq!(ns[0].0, Move::Exchange { i: 0, j: 1, g: 0, h: 4 });
        assert_eq!(ns[1].0, Move::Exchange { i: 0, j: 1, g: 0, h: 5 });
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_allocations(&zero(2, 2), &[1, 1]).unwrap().count(), 2);
        assert_eq!(enumerate_allocations(&zero(2, 6), &[3, 3]).unwrap().count(), 20);
        let all: Vec<_> = enumerate_allocations(&zero(3, 6), &[2, 2, 2]).unwrap().collect();
        assert_eq!(all.len(), 90);
        let keys: Vec<_> = all.iter().map(crate::model::canonical_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_allocations(&zero(2, 6), &[3, 2]).is_err());
        assert_eq!(multinomial(&[2, 2, 2]), Some(90));
        assert_eq!(multinomial(&[5, 5, 2, 2]), Some(1_513_512));
    }

    #[test]
    fn trivial_distances() {
        let inst = zero(2, 4);
        let a = alloc(4, &[&[1, 2], &[3, 4]]);
        let b = alloc(4, &[&[3, 4], &[1, 2]]);
        let budget = SearchBudget::default();
        assert_eq!(bfs_distance(&inst, &a, &a, MoveSet::ExchangeOnly, budget).unwrap(), Distance::Exact(0));
        assert_eq!(bfs_distance(&inst, &a, &b, MoveSet::ExchangeOnly, budget).unwrap(), Distance::Exact(2));
        assert_eq!(bfs_distance(&inst, &a, &b, MoveSet::TransferOnly, budget).unwrap(), Distance::Exact(4));
        let c = alloc(4, &[&[1], &[2, 3, 4]]);
        assert_eq!(
            bfs_distance(&inst, &a, &c, MoveSet::ExchangeOnly, budget),
            Err(Error::SizeVectorMismatch)
        );
        let tiny = SearchBudget { max_states: 2, max_path_len: None };
        assert_eq!(bfs_distance(&inst, &a, &b, MoveSet::ExchangeOnly, tiny).unwrap(), Distance::BudgetExhausted);
        let short = SearchBudget { max_states: 100, max_path_len: Some(1) };
        assert_eq!(bfs_distance(&inst, &a, &b, MoveSet::ExchangeOnly, short).unwrap(), Distance::BudgetExhausted);
    }

    #[test]
    fn reach_rejects_non_ef1_endpoints() {
        let inst = Instance::with_numbered_goods(vec![vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let a = alloc(3, &[&[1, 2, 3], &[]]);
        assert_eq!(
            ef1_reach(&inst, &a, &a, MoveSet::TransferOnly, SearchBudget::default()),
            Err(Error::NotEf1("source"))
        );
    }

    #[test]
    fn reach_from_self_is_empty() {
        let inst = zero(2, 2);
        let a = alloc(2, &[&[1], &[2]]);
        let r = ef1_reach(&inst, &a, &a, MoveSet::ExchangeOnly, SearchBudget::default()).unwrap();
        assert_eq!(r, PathResult::Found { path: vec![], length: 0 });
    }

    #[test]
    fn verify_path_catches_wrong_endpoint() {
        let inst = zero(2, 2);
        let a = alloc(2, &[&[1], &[2]]);
        let b = alloc(2, &[&[2], &[1]]);
        let mv = Move::Exchange { i: 0, j: 1, g: 0, h: 1 };
        assert!(verify_path(&inst, &a, &b, &[mv], true).is_ok());
        assert!(verify_path(&inst, &a, &a, &[mv], true).is_err());
    }

    #[test]
    fn transfer_connectivity_of_zero_instance() {
        let inst = zero(2, 3);
        let c = ef1_component_connected(&inst, None, MoveSet::TransferOnly, SearchBudget::default()).unwrap();
        assert!(c.connected);
        assert_eq!(c.universe, 8);
        assert_eq!(c.component_sizes, vec![8]);
    }
}
