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

//! Instances, allocations and moves, together with the EF1 predicate.
//!
//! Utilities enter as non-negative rationals and are stored as integers: each
//! agent's row is multiplied by the least common multiple of its
//! denominators. EF1 only compares values within one agent's row, so the
//! rescaling never changes a verdict.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Index of an agent, 0-based.
pub type Agent = usize;
/// Index of a good, 0-based.
pub type Good = usize;

/// Agents, goods and an exact additive utility matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    goods: Vec<String>,
    utilities: Vec<Vec<u64>>,
    identical: bool,
    binary: bool,
}

/// Builds an [`Instance`] from rational utility rows, clearing denominators
/// agent by agent.
pub fn normalize_instance(
    agents: usize,
    goods: Vec<String>,
    rows: &[Vec<Ratio<i64>>],
) -> Result<Instance> {
    if agents < 2 {
        return Err(Error::TooFewAgents(agents));
    }
    if rows.len() != agents {
        return Err(Error::RowCount {
            expected: agents,
            got: rows.len(),
        });
    }
    let mut utilities = Vec::with_capacity(agents);
    for (agent, row) in rows.iter().enumerate() {
        if row.len() != goods.len() {
            return Err(Error::ColumnCount {
                agent,
                expected: goods.len(),
                got: row.len(),
            });
        }
        let mut lcm: i128 = 1;
        for (good, value) in row.iter().enumerate() {
            if *value.denom() == 0 {
                return Err(Error::ZeroDenominator { agent });
            }
            if (*value.numer() < 0) != (*value.denom() < 0) && *value.numer() != 0 {
                return Err(Error::NegativeUtility { agent, good });
            }
            lcm = lcm.lcm(&i128::from(*value.denom()).abs());
            if lcm > i128::from(u64::MAX) {
                return Err(Error::Overflow("clearing denominators"));
            }
        }
        let scaled = row
            .iter()
            .map(|value| {
                let numer = i128::from(*value.numer()).abs();
                let factor = lcm / i128::from(*value.denom()).abs();
                numer
                    .checked_mul(factor)
                    .and_then(|v| u64::try_from(v).ok())
                    .ok_or(Error::Overflow("clearing denominators"))
            })
            .collect::<Result<Vec<u64>>>()?;
        utilities.push(scaled);
    }
    Instance::from_integers(goods, utilities)
}

impl Instance {
    /// Builds an instance from an integer utility matrix, one row per agent.
    pub fn from_integers(goods: Vec<String>, utilities: Vec<Vec<u64>>) -> Result<Self> {
        let n = utilities.len();
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        if u16::try_from(n).is_err() {
            return Err(Error::TooLarge(format!("{n} agents")));
        }
        if goods.is_empty() {
            return Err(Error::EmptyGoods);
        }
        let mut seen = std::collections::HashSet::with_capacity(goods.len());
        for name in &goods {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGood(name.clone()));
            }
        }
        for (agent, row) in utilities.iter().enumerate() {
            if row.len() != goods.len() {
                return Err(Error::ColumnCount {
                    agent,
                    expected: goods.len(),
                    got: row.len(),
                });
            }
            row.iter()
                .try_fold(0u64, |acc, &v| acc.checked_add(v))
                .ok_or(Error::Overflow("summing a utility row"))?;
        }
        let identical = utilities.windows(2).all(|w| w[0] == w[1]);
        let binary = utilities.iter().flatten().all(|&v| v <= 1);
        Ok(Instance {
            goods,
            utilities,
            identical,
            binary,
        })
    }

    /// `agents` agents sharing one integer utility row.
    pub fn identical(agents: usize, goods: Vec<String>, row: Vec<u64>) -> Result<Self> {
        Self::from_integers(goods, vec![row; agents])
    }

    /// Goods named `g1..gm`.
    pub fn with_numbered_goods(utilities: Vec<Vec<u64>>) -> Result<Self> {
        let m = utilities.first().map_or(0, Vec::len);
        Self::from_integers(numbered_goods(m), utilities)
    }

    pub fn agents(&self) -> usize {
        self.utilities.len()
    }

    pub fn goods(&self) -> usize {
        self.goods.len()
    }

    pub fn good_names(&self) -> &[String] {
        &self.goods
    }

    pub fn good_name(&self, good: Good) -> &str {
        &self.goods[good]
    }

    pub fn good_index(&self, name: &str) -> Option<Good> {
        self.goods.iter().position(|g| g == name)
    }

    pub fn utility(&self, agent: Agent, good: Good) -> u64 {
        self.utilities[agent][good]
    }

    pub fn row(&self, agent: Agent) -> &[u64] {
        &self.utilities[agent]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.utilities
    }

    /// Utility of a set of goods to `agent`.
    pub fn value<I: IntoIterator<Item = Good>>(&self, agent: Agent, bundle: I) -> u64 {
        bundle.into_iter().map(|g| self.utilities[agent][g]).sum()
    }

    pub fn is_identical(&self) -> bool {
        self.identical
    }

    pub fn is_binary(&self) -> bool {
        self.binary
    }
}

/// `["g1", ..., "gm"]`.
pub fn numbered_goods(m: usize) -> Vec<String> {
    (1..=m).map(|k| format!("g{k}")).collect()
}

/// An ordered partition of the goods into one (possibly empty) bundle per
/// agent, stored as the owner of every good.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    agents: usize,
    owner: Vec<u16>,
}

impl Allocation {
    /// Builds an allocation from per-agent bundles of good indices.
    pub fn from_bundles(goods: usize, bundles: &[Vec<Good>]) -> Result<Self> {
        let agents = bundles.len();
        if u16::try_from(agents).is_err() {
            return Err(Error::TooLarge(format!("{agents} agents")));
        }
        let mut owner = vec![u16::MAX; goods];
        for (agent, bundle) in bundles.iter().enumerate() {
            for &g in bundle {
                if g >= goods {
                    return Err(Error::ShapeMismatch(format!("good index {g} out of range")));
                }
                if owner[g] != u16::MAX {
                    return Err(Error::ShapeMismatch(format!(
                        "good {g} appears in more than one bundle"
                    )));
                }
                owner[g] = agent as u16;
            }
        }
        if let Some(g) = owner.iter().position(|&o| o == u16::MAX) {
            return Err(Error::ShapeMismatch(format!("good {g} is not allocated")));
        }
        Ok(Allocation { agents, owner })
    }

    /// Builds an allocation from the owner of every good.
    pub fn from_owners(agents: usize, owners: &[Agent]) -> Result<Self> {
        if u16::try_from(agents).is_err() {
            return Err(Error::TooLarge(format!("{agents} agents")));
        }
        let owner = owners
            .iter()
            .map(|&a| {
                if a < agents {
                    Ok(a as u16)
                } else {
                    Err(Error::ShapeMismatch(format!("owner {a} out of range")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Allocation { agents, owner })
    }

    /// Builds an allocation from bundles given by good names.
    pub fn from_named_bundles<S: AsRef<str>>(inst: &Instance, bundles: &[Vec<S>]) -> Result<Self> {
        let indexed = bundles
            .iter()
            .map(|bundle| {
                bundle
                    .iter()
                    .map(|name| {
                        inst.good_index(name.as_ref())
                            .ok_or_else(|| Error::UnknownGood(name.as_ref().to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let alloc = Self::from_bundles(inst.goods(), &indexed)?;
        alloc.check_shape(inst)?;
        Ok(alloc)
    }

    pub(crate) fn from_raw(agents: usize, owner: Vec<u16>) -> Self {
        Allocation { agents, owner }
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn goods(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, good: Good) -> Agent {
        usize::from(self.owner[good])
    }

    pub(crate) fn raw_owners(&self) -> &[u16] {
        &self.owner
    }

    /// Sorted goods of `agent`.
    pub fn bundle(&self, agent: Agent) -> Vec<Good> {
        (0..self.owner.len())
            .filter(|&g| usize::from(self.owner[g]) == agent)
            .collect()
    }

    pub fn bundles(&self) -> Vec<Vec<Good>> {
        let mut bundles = vec![Vec::new(); self.agents];
        for (g, &o) in self.owner.iter().enumerate() {
            bundles[usize::from(o)].push(g);
        }
        bundles
    }

    pub fn size_vector(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.agents];
        for &o in &self.owner {
            sizes[usize::from(o)] += 1;
        }
        sizes
    }

    /// Checks that this allocation has as many agents and goods as `inst`.
    pub fn check_shape(&self, inst: &Instance) -> Result<()> {
        if self.agents != inst.agents() {
            return Err(Error::ShapeMismatch(format!(
                "{} bundles for {} agents",
                self.agents,
                inst.agents()
            )));
        }
        if self.owner.len() != inst.goods() {
            return Err(Error::ShapeMismatch(format!(
                "{} goods allocated, instance has {}",
                self.owner.len(),
                inst.goods()
            )));
        }
        Ok(())
    }

    /// Applies `mv`, see [`apply_move`].
    pub fn apply(&self, mv: &Move) -> Result<Allocation> {
        apply_move(self, mv)
    }

    /// Replays `moves` in order.
    pub fn replay<'a, I: IntoIterator<Item = &'a Move>>(&self, moves: I) -> Result<Allocation> {
        moves
            .into_iter()
            .try_fold(self.clone(), |alloc, mv| alloc.apply(mv))
    }
}

/// Hashable identity of an allocation: the owner of each good, in good
/// order. Two keys are equal exactly when the allocations are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AllocationKey(pub Vec<Agent>);

pub fn canonical_key(alloc: &Allocation) -> AllocationKey {
    AllocationKey(alloc.owner.iter().map(|&o| usize::from(o)).collect())
}

/// A single operation on an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// Agent `i` gives `g` to agent `j` and receives `h` in return.
    Exchange { i: Agent, j: Agent, g: Good, h: Good },
    /// Agent `i` gives `g` to agent `j`.
    Transfer { i: Agent, j: Agent, g: Good },
}

impl Move {
    pub fn is_exchange(&self) -> bool {
        matches!(self, Move::Exchange { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Exchange { i, j, g, h } => {
                write!(f, "exchange g{} (agent {}) <-> g{} (agent {})", g + 1, i + 1, h + 1, j + 1)
            }
            Move::Transfer { i, j, g } => {
                write!(f, "transfer g{} from agent {} to agent {}", g + 1, i + 1, j + 1)
            }
        }
    }
}

/// Which operations connect allocations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSet {
    ExchangeOnly,
    TransferOnly,
    ExchangeAndTransfer,
}

impl MoveSet {
    pub fn exchanges(self) -> bool {
        matches!(self, MoveSet::ExchangeOnly | MoveSet::ExchangeAndTransfer)
    }

    pub fn transfers(self) -> bool {
        matches!(self, MoveSet::TransferOnly | MoveSet::ExchangeAndTransfer)
    }
}

/// Returns the allocation reached by `mv`. Exchanges keep the size vector;
/// a transfer moves one unit of size from `i` to `j`.
pub fn apply_move(alloc: &Allocation, mv: &Move) -> Result<Allocation> {
    let mut owner = alloc.owner.clone();
    let check = |agent: Agent, good: Good| -> Result<()> {
        if agent >= alloc.agents || good >= owner.len() || usize::from(owner[good]) != agent {
            Err(Error::GoodNotInBundle { agent, good })
        } else {
            Ok(())
        }
    };
    match *mv {
        Move::Exchange { i, j, g, h } => {
            if i == j {
                return Err(Error::SameAgent);
            }
            if g == h {
                return Err(Error::SameGood);
            }
            check(i, g)?;
            check(j, h)?;
            owner[g] = j as u16;
            owner[h] = i as u16;
        }
        Move::Transfer { i, j, g } => {
            if i == j {
                return Err(Error::SameAgent);
            }
            if j >= alloc.agents {
                return Err(Error::ShapeMismatch(format!("agent {j} out of range")));
            }
            check(i, g)?;
            owner[g] = j as u16;
        }
    }
    Ok(Allocation {
        agents: alloc.agents,
        owner,
    })
}

/// Reusable buffers for repeated EF1 checks.
#[derive(Debug, Default)]
pub(crate) struct Ef1Scratch {
    sums: Vec<u128>,
    maxes: Vec<u64>,
    counts: Vec<u32>,
}

/// Scans every ordered pair `(i, j)`; calls `on_violation` for pairs where
/// `i` envies `j` by more than one good and stops early when it returns
/// `false`. Returns whether the allocation is EF1.
pub(crate) fn scan_ef1<O: Copy + Into<usize>>(
    inst: &Instance,
    owner: &[O],
    scratch: &mut Ef1Scratch,
    mut on_violation: impl FnMut(Agent, Agent) -> bool,
) -> bool {
    let n = inst.agents();
    scratch.sums.clear();
    scratch.sums.resize(n, 0);
    scratch.maxes.clear();
    scratch.maxes.resize(n, 0);
    scratch.counts.clear();
    scratch.counts.resize(n, 0);
    let mut ok = true;
    for i in 0..n {
        let row = inst.row(i);
        scratch.sums.iter_mut().for_each(|s| *s = 0);
        scratch.maxes.iter_mut().for_each(|s| *s = 0);
        scratch.counts.iter_mut().for_each(|s| *s = 0);
        for (g, &o) in owner.iter().enumerate() {
            let j = o.into();
            let v = row[g];
            scratch.sums[j] += u128::from(v);
            scratch.counts[j] += 1;
            if v > scratch.maxes[j] {
                scratch.maxes[j] = v;
            }
        }
        let own = scratch.sums[i];
        for j in 0..n {
            if j == i || scratch.counts[j] == 0 {
                continue;
            }
            if own + u128::from(scratch.maxes[j]) < scratch.sums[j] {
                ok = false;
                if !on_violation(i, j) {
                    return false;
                }
            }
        }
    }
    ok
}

/// Whether every agent `i` stops envying every non-empty bundle `A_j` once
/// the most valuable good (to `i`) is removed from it.
pub fn is_ef1(inst: &Instance, alloc: &Allocation) -> Result<bool> {
    alloc.check_shape(inst)?;
    Ok(scan_ef1(inst, &alloc.owner, &mut Ef1Scratch::default(), |_, _| false))
}

/// Ordered pairs `(i, j)` where `i` envies `j` by more than one good, sorted.
pub fn ef1_violations(inst: &Instance, alloc: &Allocation) -> Result<Vec<(Agent, Agent)>> {
    alloc.check_shape(inst)?;
    let mut out = Vec::new();
    scan_ef1(inst, &alloc.owner, &mut Ef1Scratch::default(), |i, j| {
        out.push((i, j));
        true
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    fn thm31() -> Instance {
        Instance::with_numbered_goods(vec![
            vec![3, 3, 2, 2, 2, 2, 0, 0],
            vec![3, 3, 1, 1, 1, 1, 0, 0],
        ])
        .unwrap()
    }

    fn alloc(m: usize, bundles: &[&[usize]]) -> Allocation {
        let b: Vec<Vec<usize>> = bundles.iter().map(|b| b.iter().map(|g| g - 1).collect()).collect();
        Allocation::from_bundles(m, &b).unwrap()
    }

    #[test]
    fn normalize_clears_denominators_per_agent() {
        let rows = vec![vec![r(1, 2), r(1, 3)], vec![r(1, 2), r(1, 3)]];
        let inst = normalize_instance(2, numbered_goods(2), &rows).unwrap();
        assert_eq!(inst.rows(), &[vec![3, 2], vec![3, 2]]);
        assert!(inst.is_identical());
        assert!(!inst.is_binary());
    }

    #[test]
    fn normalize_keeps_integers_and_flags() {
        let rows: Vec<Vec<Ratio<i64>>> = [[3, 3, 2, 2, 2, 2, 0, 0], [3, 3, 1, 1, 1, 1, 0, 0]]
            .iter()
            .map(|row| row.iter().map(|&v| Ratio::from_integer(v)).collect())
            .collect();
        let inst = normalize_instance(2, numbered_goods(8), &rows).unwrap();
        assert_eq!(inst.row(0), &[3, 3, 2, 2, 2, 2, 0, 0]);
        assert!(!inst.is_identical());
        assert!(!inst.is_binary());

        let rows: Vec<Vec<Ratio<i64>>> = [[1, 0, 1, 0], [1, 0, 1, 0], [0, 1, 1, 0]]
            .iter()
            .map(|row| row.iter().map(|&v| Ratio::from_integer(v)).collect())
            .collect();
        let inst = normalize_instance(3, numbered_goods(4), &rows).unwrap();
        assert!(inst.is_binary());
        assert!(!inst.is_identical());
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let goods = numbered_goods(2);
        let neg = vec![vec![r(-1, 2), r(1, 1)], vec![r(1, 1), r(1, 1)]];
        assert_eq!(
            normalize_instance(2, goods.clone(), &neg),
            Err(Error::NegativeUtility { agent: 0, good: 0 })
        );
        let one = vec![vec![r(1, 1), r(1, 1)]];
        assert_eq!(normalize_instance(1, goods.clone(), &one), Err(Error::TooFewAgents(1)));
        let dup = vec!["a".to_string(), "a".to_string()];
        let ok_rows = vec![vec![r(1, 1), r(1, 1)]; 2];
        assert_eq!(
            normalize_instance(2, dup, &ok_rows),
            Err(Error::DuplicateGood("a".into()))
        );
        assert_eq!(
            normalize_instance(2, Vec::new(), &[vec![], vec![]]),
            Err(Error::EmptyGoods)
        );
        let short = vec![vec![r(1, 1)], vec![r(1, 1), r(1, 1)]];
        assert!(matches!(
            normalize_instance(2, goods, &short),
            Err(Error::ColumnCount { agent: 0, .. })
        ));
    }

    #[test]
    fn normalize_overflow_is_an_error() {
        let big = Ratio::from_integer(i64::MAX);
        let rows = vec![vec![big, big, big], vec![big, big, big]];
        assert!(matches!(
            normalize_instance(2, numbered_goods(3), &rows),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn ef1_on_disconnected_two_agent_example() {
        let inst = thm31();
        let a = alloc(8, &[&[1, 2, 7, 8], &[3, 4, 5, 6]]);
        assert!(is_ef1(&inst, &a).unwrap());
        let b = alloc(8, &[&[3, 4, 5, 6], &[1, 2, 7, 8]]);
        assert!(is_ef1(&inst, &b).unwrap());

        let x31 = a.apply(&Move::Exchange { i: 1, j: 0, g: 2, h: 0 }).unwrap();
        assert!(!is_ef1(&inst, &x31).unwrap());
        assert_eq!(ef1_violations(&inst, &x31).unwrap(), vec![(0, 1)]);

        let x37 = a.apply(&Move::Exchange { i: 1, j: 0, g: 2, h: 6 }).unwrap();
        assert_eq!(ef1_violations(&inst, &x37).unwrap(), vec![(1, 0)]);
        assert!(ef1_violations(&inst, &a).unwrap().is_empty());
    }

    #[test]
    fn single_good_is_always_ef1() {
        let inst = Instance::with_numbered_goods(vec![vec![5], vec![7]]).unwrap();
        let a = Allocation::from_bundles(1, &[vec![0], vec![]]).unwrap();
        assert!(is_ef1(&inst, &a).unwrap());
    }

    #[test]
    fn apply_move_examples() {
        let a = alloc(2, &[&[1], &[2]]);
        let swapped = a.apply(&Move::Exchange { i: 0, j: 1, g: 0, h: 1 }).unwrap();
        assert_eq!(swapped.bundles(), vec![vec![1], vec![0]]);
        let moved = a.apply(&Move::Transfer { i: 0, j: 1, g: 0 }).unwrap();
        assert_eq!(moved.bundles(), vec![vec![], vec![0, 1]]);
        assert_eq!(moved.size_vector(), vec![0, 2]);

        let c = alloc(6, &[&[2, 3, 4], &[1, 5, 6]]);
        let d = c
            .replay(&[
                Move::Exchange { i: 0, j: 1, g: 1, h: 4 },
                Move::Exchange { i: 0, j: 1, g: 2, h: 5 },
            ])
            .unwrap();
        assert_eq!(d, alloc(6, &[&[4, 5, 6], &[1, 2, 3]]));
    }

    #[test]
    fn apply_move_errors() {
        let a = alloc(2, &[&[1], &[2]]);
        assert_eq!(
            a.apply(&Move::Exchange { i: 0, j: 1, g: 1, h: 0 }),
            Err(Error::GoodNotInBundle { agent: 0, good: 1 })
        );
        assert_eq!(a.apply(&Move::Transfer { i: 1, j: 1, g: 1 }), Err(Error::SameAgent));
        assert_eq!(
            a.apply(&Move::Transfer { i: 0, j: 1, g: 1 }),
            Err(Error::GoodNotInBundle { agent: 0, good: 1 })
        );
    }

    #[test]
    fn canonical_keys() {
        let a = alloc(2, &[&[1], &[2]]);
        let b = alloc(2, &[&[2], &[1]]);
        assert_eq!(canonical_key(&a), AllocationKey(vec![0, 1]));
        assert_eq!(canonical_key(&b), AllocationKey(vec![1, 0]));
        let x = alloc(8, &[&[1, 2, 7, 8], &[3, 4, 5, 6]]);
        let y = alloc(8, &[&[3, 4, 5, 6], &[1, 2, 7, 8]]);
        let (kx, ky) = (canonical_key(&x), canonical_key(&y));
        assert_eq!(kx.0.iter().zip(&ky.0).filter(|(p, q)| p != q).count(), 8);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let inst = thm31();
        let a = alloc(2, &[&[1], &[2]]);
        assert!(matches!(is_ef1(&inst, &a), Err(Error::ShapeMismatch(_))));
        assert!(Allocation::from_bundles(2, &[vec![0], vec![0, 1]]).is_err());
        assert!(Allocation::from_bundles(3, &[vec![0], vec![1]]).is_err());
    }
}
