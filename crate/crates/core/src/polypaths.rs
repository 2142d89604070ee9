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

//! Constructive EF1 paths for utility classes where one is guaranteed to
//! exist, built move by move without searching the state space.

use crate::error::{Error, Result};
use crate::model::{scan_ef1, Agent, Allocation, Ef1Scratch, Good, Instance, Move};
use crate::search::verify_path;

/// A constructed path plus the number of EF1 checks spent building it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Construction {
    pub moves: Vec<Move>,
    pub candidate_checks: usize,
    /// Misplaced-good counts seen during the resolving phase of
    /// [`path_identical_binary`], one entry per move of that phase.
    pub misplaced_trace: Vec<usize>,
}

/// Class required by the instance handed to [`path_xt_via_dummies`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseAlgorithm {
    TwoIdentical,
    TwoBinary,
    IdenticalBinary,
}

struct Checker<'a> {
    inst: &'a Instance,
    scratch: Ef1Scratch,
    checks: usize,
}

impl<'a> Checker<'a> {
    fn new(inst: &'a Instance) -> Self {
        Checker {
            inst,
            scratch: Ef1Scratch::default(),
            checks: 0,
        }
    }

    fn ef1(&mut self, alloc: &Allocation) -> bool {
        self.checks += 1;
        scan_ef1(self.inst, alloc.raw_owners(), &mut self.scratch, |_, _| false)
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn endpoints_ef1(inst: &Instance, a: &Allocation, b: &Allocation, same_sizes: bool) -> Result<()> {
    a.check_shape(inst)?;
    b.check_shape(inst)?;
    if same_sizes && a.size_vector() != b.size_vector() {
        return Err(Error::SizeVectorMismatch);
    }
    let mut scratch = Ef1Scratch::default();
    if !scan_ef1(inst, a.raw_owners(), &mut scratch, |_, _| false) {
        return Err(Error::NotEf1("source"));
    }
    if !scan_ef1(inst, b.raw_owners(), &mut scratch, |_, _| false) {
        return Err(Error::NotEf1("target"));
    }
    Ok(())
}

/// Goods agent `agent` holds in `cur` but not in `b`, by non-increasing
/// utility to `agent`, ties by index.
fn leaving(inst: &Instance, cur: &Allocation, b: &Allocation, agent: Agent) -> Vec<Good> {
    let mut out: Vec<Good> = (0..cur.goods())
        .filter(|&g| cur.owner(g) == agent && b.owner(g) != agent)
        .collect();
    out.sort_by_key(|&g| (std::cmp::Reverse(inst.utility(agent, g)), g));
    out
}

/// Repeatedly takes the first EF1-preserving exchange in `X x Y`.
fn two_agent_first_fit(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    let mut checker = Checker::new(inst);
    let mut cur = a.clone();
    let mut moves = Vec::new();
    loop {
        let xs = leaving(inst, &cur, b, 0);
        let ys = leaving(inst, &cur, b, 1);
        if xs.is_empty() {
            break;
        }
        let mut chosen = None;
        'scan: for &x in &xs {
            for &y in &ys {
                let mv = Move::Exchange { i: 0, j: 1, g: x, h: y };
                let next = cur.apply(&mv)?;
                if checker.ef1(&next) {
                    chosen = Some((mv, next));
                    break 'scan;
                }
            }
        }
        let Some((mv, next)) = chosen else {
            return Err(Error::TheoremViolation(format!(
                "no EF1 exchange among {} x {} candidates after {} moves",
                xs.len(),
                ys.len(),
                moves.len()
            )));
        };
        moves.push(mv);
        cur = next;
    }
    Ok(Construction {
        moves,
        candidate_checks: checker.checks,
        misplaced_trace: Vec::new(),
    })
}

/// Optimal EF1 exchange path for two agents with identical utilities.
pub fn path_two_identical(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    require(inst.agents() == 2, "exactly two agents are required")?;
    require(inst.is_identical(), "utilities must be identical")?;
    endpoints_ef1(inst, a, b, true)?;
    two_agent_first_fit(inst, a, b)
}

/// Optimal EF1 exchange path for two agents with binary utilities.
pub fn path_two_binary(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    require(inst.agents() == 2, "exactly two agents are required")?;
    require(inst.is_binary(), "utilities must be binary")?;
    endpoints_ef1(inst, a, b, true)?;
    two_agent_first_fit(inst, a, b)
}

/// EF1 exchange path for any number of agents with identical binary
/// utilities. Not optimal in general.
pub fn path_identical_binary(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    require(inst.is_identical(), "utilities must be identical")?;
    require(inst.is_binary(), "utilities must be binary")?;
    endpoints_ef1(inst, a, b, true)?;
    let n = inst.agents();
    let u = inst.row(0).to_vec();
    let mut checker = Checker::new(inst);
    let mut cur = a.clone();
    let mut moves = Vec::new();
    let mut push = |cur: &mut Allocation, mv: Move, checker: &mut Checker| -> Result<()> {
        let next = cur.apply(&mv)?;
        if !checker.ef1(&next) {
            return Err(Error::TheoremViolation(format!("{mv} breaks EF1")));
        }
        moves.push(mv);
        *cur = next;
        Ok(())
    };

    let target: Vec<u64> = (0..n).map(|i| inst.value(0, b.bundle(i))).collect();
    loop {
        let value: Vec<u64> = (0..n).map(|i| inst.value(0, cur.bundle(i))).collect();
        let low = (0..n).find(|&i| value[i] < target[i]);
        let high = (0..n).find(|&j| value[j] > target[j]);
        let (i, j) = match (low, high) {
            (None, None) => break,
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::TheoremViolation("unbalanced bundle values".into())),
        };
        let pick = |holder: Agent, want: u64, partner: Agent| -> Option<Good> {
            let held: Vec<Good> = cur.bundle(holder).into_iter().filter(|&g| u[g] == want).collect();
            held.iter()
                .copied()
                .find(|&g| b.owner(g) == partner)
                .or_else(|| held.first().copied())
        };
        let (Some(g), Some(h)) = (pick(i, 0, j), pick(j, 1, i)) else {
            return Err(Error::TheoremViolation("no 0-good/1-good pair to exchange".into()));
        };
        push(&mut cur, Move::Exchange { i, j, g, h }, &mut checker)?;
    }

    let misplaced = |cur: &Allocation| (0..cur.goods()).filter(|&g| cur.owner(g) != b.owner(g)).count();
    let mut trace = Vec::new();
    for class in [1u64, 0] {
        loop {
            let Some(g) = (0..cur.goods()).find(|&g| u[g] == class && cur.owner(g) != b.owner(g)) else {
                break;
            };
            let (i, j) = (cur.owner(g), b.owner(g));
            let Some(h) = (0..cur.goods()).find(|&h| u[h] == class && cur.owner(h) == j && b.owner(h) != j)
            else {
                return Err(Error::TheoremViolation(format!("no outgoing edge at agent {j}")));
            };
            let before = misplaced(&cur);
            push(&mut cur, Move::Exchange { i, j, g, h }, &mut checker)?;
            let after = misplaced(&cur);
            if after >= before {
                return Err(Error::TheoremViolation("misplaced count did not drop".into()));
            }
            trace.push(before);
        }
    }
    if &cur != b {
        return Err(Error::TheoremViolation("construction ended away from the target".into()));
    }
    Ok(Construction {
        moves,
        candidate_checks: checker.checks,
        misplaced_trace: trace,
    })
}

/// Exchange-and-transfer path obtained by padding every bundle with
/// zero-utility goods up to `m`, solving the exchange-only problem and
/// translating the exchanges back.
pub fn path_xt_via_dummies(
    inst: &Instance,
    a: &Allocation,
    b: &Allocation,
    base: BaseAlgorithm,
) -> Result<Construction> {
    endpoints_ef1(inst, a, b, false)?;
    let (n, m) = (inst.agents(), inst.goods());
    match base {
        BaseAlgorithm::TwoIdentical => {
            require(n == 2, "exactly two agents are required")?;
            require(inst.is_identical(), "utilities must be identical")?;
        }
        BaseAlgorithm::TwoBinary => {
            require(n == 2, "exactly two agents are required")?;
            require(inst.is_binary(), "utilities must be binary")?;
        }
        BaseAlgorithm::IdenticalBinary => {
            require(inst.is_identical(), "utilities must be identical")?;
            require(inst.is_binary(), "utilities must be binary")?;
        }
    }
    if a == b {
        return Ok(Construction::default());
    }
    let total = n
        .checked_mul(m)
        .ok_or(Error::Overflow("padding with dummy goods"))?;
    let mut names = inst.good_names().to_vec();
    names.extend((0..total - m).map(|k| format!("~dummy{k}")));
    let rows = inst
        .rows()
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(total, 0);
            r
        })
        .collect();
    let padded = Instance::from_integers(names, rows)?;

    // Dummies go to agents in index order in the source; in the target each
    // agent keeps as many of its own dummies as it needs and the surplus is
    // handed out in index order.
    let sa = a.size_vector();
    let sb = b.size_vector();
    let mut src_owner: Vec<Agent> = (0..m).map(|g| a.owner(g)).collect();
    let mut dummies_of: Vec<Vec<Good>> = vec![Vec::new(); n];
    for i in 0..n {
        for _ in 0..m - sa[i] {
            dummies_of[i].push(src_owner.len());
            src_owner.push(i);
        }
    }
    let mut dst_owner: Vec<Agent> = (0..m).map(|g| b.owner(g)).collect();
    dst_owner.resize(total, usize::MAX);
    let mut surplus = Vec::new();
    for i in 0..n {
        let need = m - sb[i];
        for (k, &d) in dummies_of[i].iter().enumerate() {
            if k < need {
                dst_owner[d] = i;
            } else {
                surplus.push(d);
            }
        }
    }
    let mut surplus = surplus.into_iter();
    for i in 0..n {
        let need = m - sb[i];
        let kept = dummies_of[i].len().min(need);
        for _ in kept..need {
            let d = surplus.next().expect("dummy counts balance");
            dst_owner[d] = i;
        }
    }
    let pa = Allocation::from_owners(n, &src_owner)?;
    let pb = Allocation::from_owners(n, &dst_owner)?;
    let inner = match base {
        BaseAlgorithm::TwoIdentical => path_two_identical(&padded, &pa, &pb)?,
        BaseAlgorithm::TwoBinary => path_two_binary(&padded, &pa, &pb)?,
        BaseAlgorithm::IdenticalBinary => path_identical_binary(&padded, &pa, &pb)?,
    };
    let moves: Vec<Move> = inner
        .moves
        .iter()
        .filter_map(|mv| match *mv {
            Move::Exchange { i, j, g, h } => match (g < m, h < m) {
                (true, true) => Some(Move::Exchange { i, j, g, h }),
                (true, false) => Some(Move::Transfer { i, j, g }),
                (false, true) => Some(Move::Transfer { i: j, j: i, g: h }),
                (false, false) => None,
            },
            Move::Transfer { .. } => unreachable!("exchange-only base algorithm"),
        })
        .collect();
    verify_path(inst, a, b, &moves, true)
        .map_err(|e| Error::TheoremViolation(format!("translated path is invalid: {e}")))?;
    Ok(Construction {
        moves,
        candidate_checks: inner.candidate_checks,
        misplaced_trace: Vec::new(),
    })
}

/// Shape recognised by [`path_three_heavy_xt`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavyShape {
    pub a0: Good,
    pub b0: Good,
    pub c0: Good,
    /// Agent 1's light goods, by non-increasing utility.
    pub a_tail: Vec<Good>,
    /// Agent 2's light goods, by non-increasing utility.
    pub b_tail: Vec<Good>,
}

/// Checks the three-agent heavy-good shape and returns its parts.
pub fn heavy_shape(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<HeavyShape> {
    require(inst.agents() == 3, "exactly three agents are required")?;
    require(inst.is_identical(), "utilities must be identical")?;
    a.check_shape(inst)?;
    b.check_shape(inst)?;
    let u = inst.row(0);
    let a3 = a.bundle(2);
    require(a3.len() == 1, "agent 3 must hold exactly one good")?;
    require(b.bundle(2) == a3, "agent 3 must keep its good")?;
    let (a1, a2) = (a.bundle(0), a.bundle(1));
    require(a1.len() == a2.len() && a1.len() >= 2, "agents 1 and 2 need k + 1 goods each, k >= 1")?;
    let kept1: Vec<Good> = a1.iter().copied().filter(|&g| b.owner(g) == 0).collect();
    let kept2: Vec<Good> = a2.iter().copied().filter(|&g| b.owner(g) == 1).collect();
    require(kept1.len() == 1 && kept2.len() == 1, "agents 1 and 2 must each keep exactly one good")?;
    let sort_desc = |mut v: Vec<Good>| {
        v.sort_by_key(|&g| (std::cmp::Reverse(u[g]), g));
        v
    };
    let a_tail = sort_desc(a1.iter().copied().filter(|&g| g != kept1[0]).collect());
    let b_tail = sort_desc(a2.iter().copied().filter(|&g| g != kept2[0]).collect());
    require(
        a_tail.iter().all(|&g| b.owner(g) == 1) && b_tail.iter().all(|&g| b.owner(g) == 0),
        "the light goods of agents 1 and 2 must be swapped",
    )?;
    let (a0, b0, c0) = (kept1[0], kept2[0], a3[0]);
    let m0 = u[a0].min(u[b0]).min(u[c0]);
    let sa: u64 = a_tail.iter().map(|&g| u[g]).sum();
    let sb: u64 = b_tail.iter().map(|&g| u[g]).sum();
    require(m0 >= sa.max(sb), "the kept goods must each outweigh both light sums")?;
    Ok(HeavyShape {
        a0,
        b0,
        c0,
        a_tail,
        b_tail,
    })
}

/// EF1 exchange-and-transfer path of length `k + 2` for three agents with
/// identical utilities, two bundles `a0 + tail` / `b0 + tail` and a single
/// heavy good with agent 3, swapping the tails.
pub fn path_three_heavy_xt(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    let shape = heavy_shape(inst, a, b)?;
    endpoints_ef1(inst, a, b, false)?;
    let u = inst.row(0);
    let m0 = u[shape.a0].min(u[shape.b0]).min(u[shape.c0]);
    let mut row = u.to_vec();
    for g in [shape.a0, shape.b0, shape.c0] {
        row[g] = m0;
    }
    // EF1 on the flattened instance implies EF1 on the original one.
    let reduced = Instance::identical(3, inst.good_names().to_vec(), row.clone())?;
    let mut checker = Checker::new(&reduced);

    let (a_tail, b_tail) = (&shape.a_tail, &shape.b_tail);
    let route_a = row[a_tail[0]] >= row[b_tail[0]];
    let (carrier, from, back_to) = if route_a {
        (a_tail[0], 0, 1)
    } else {
        (b_tail[0], 1, 0)
    };
    let mut cur = a.clone();
    let mut moves = Vec::new();
    let first = Move::Transfer { i: from, j: 2, g: carrier };
    cur = cur.apply(&first)?;
    if !checker.ef1(&cur) {
        return Err(Error::TheoremViolation("routing the largest light good breaks EF1".into()));
    }
    moves.push(first);

    // Remaining light goods paired by rank; `None` is the empty slot left by
    // the routed good.
    let (left, right): (Vec<Option<Good>>, Vec<Option<Good>>) = if route_a {
        (
            a_tail[1..].iter().map(|&g| Some(g)).chain([None]).collect(),
            b_tail.iter().map(|&g| Some(g)).collect(),
        )
    } else {
        (
            a_tail.iter().map(|&g| Some(g)).collect(),
            b_tail[1..].iter().map(|&g| Some(g)).chain([None]).collect(),
        )
    };
    let mut pending: Vec<usize> = (0..left.len()).collect();
    while !pending.is_empty() {
        let mut chosen = None;
        for (pos, &l) in pending.iter().enumerate() {
            let mv = match (left[l], right[l]) {
                (Some(g), Some(h)) => Move::Exchange { i: 0, j: 1, g, h },
                (Some(g), None) => Move::Transfer { i: 0, j: 1, g },
                (None, Some(h)) => Move::Transfer { i: 1, j: 0, g: h },
                (None, None) => unreachable!("only one side has an empty slot"),
            };
            let next = cur.apply(&mv)?;
            if checker.ef1(&next) {
                chosen = Some((pos, mv, next));
                break;
            }
        }
        let Some((pos, mv, next)) = chosen else {
            return Err(Error::TheoremViolation(format!(
                "no EF1 pair among {} remaining",
                pending.len()
            )));
        };
        pending.remove(pos);
        moves.push(mv);
        cur = next;
    }

    moves.push(Move::Transfer { i: 2, j: back_to, g: carrier });
    verify_path(inst, a, b, &moves, true).map_err(|e| Error::TheoremViolation(e.to_string()))?;
    Ok(Construction {
        moves,
        candidate_checks: checker.checks,
        misplaced_trace: Vec::new(),
    })
}

/// Runs the exchange-only algorithm matching `inst`'s class, if any.
pub fn auto_exchange_path(inst: &Instance, a: &Allocation, b: &Allocation) -> Result<Construction> {
    match (inst.agents(), inst.is_identical(), inst.is_binary()) {
        (_, true, true) if inst.agents() > 2 => path_identical_binary(inst, a, b),
        (2, true, _) => path_two_identical(inst, a, b),
        (2, _, true) => path_two_binary(inst, a, b),
        _ => Err(Error::Precondition("no constructive algorithm covers this instance".into())),
    }
}
