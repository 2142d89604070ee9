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

//! Small instances with known reachability behavior, each with the checks
//! that pin it down.

use crate::distance::distance_via_cycles;
use crate::error::{Error, Result};
use crate::model::{is_ef1, Allocation, Instance, Move, MoveSet};
use crate::polypaths::path_three_heavy_xt;
use crate::search::{
    bfs_distance, ef1_component_connected, ef1_reach, optimal_ef1_path, verify_path, Distance, PathResult,
    SearchBudget,
};

pub const CATALOG_NAMES: [&str; 7] = [
    "gen2-disconnected",
    "gen2-no-optimal",
    "idenbin3-no-optimal",
    "binary3-disconnected",
    "iden3-disconnected",
    "transfer2-disconnected",
    "xt3-heavy-example",
];

/// A machine-checkable claim about a fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    /// `ef1_reach` finds a path (of this length, if given) or proves none.
    Reach {
        moves: MoveSet,
        found: bool,
        length: Option<usize>,
    },
    /// Exchange distance, by BFS and by cycle partition.
    Distance(usize),
    /// Whether an EF1 path of optimal length exists.
    Optimal { moves: MoveSet, found: bool },
    /// Connectivity of the EF1 exchange graph over the source size vector.
    Connected(bool),
    /// The three-heavy construction has this many moves and starts with
    /// this move.
    HeavyConstruction { length: usize, first: Move },
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub instance: Instance,
    pub source: Allocation,
    pub target: Allocation,
    pub expectations: Vec<Expectation>,
}

/// Result of checking one expectation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub claim: String,
    pub observed: String,
    pub passed: bool,
}

fn fixture(
    name: &'static str,
    rows: Vec<Vec<u64>>,
    source: &[&[usize]],
    target: &[&[usize]],
    expectations: Vec<Expectation>,
) -> Result<Fixture> {
    let instance = Instance::with_numbered_goods(rows)?;
    let m = instance.goods();
    // Bundles are written 1-based, as g1..gm.
    let bundles = |b: &[&[usize]]| -> Vec<Vec<usize>> { b.iter().map(|x| x.iter().map(|g| g - 1).collect()).collect() };
    Ok(Fixture {
        name,
        source: Allocation::from_bundles(m, &bundles(source))?,
        target: Allocation::from_bundles(m, &bundles(target))?,
        instance,
        expectations,
    })
}

fn reach(moves: MoveSet, found: bool, length: Option<usize>) -> Expectation {
    Expectation::Reach { moves, found, length }
}

pub fn catalog(name: &str) -> Result<Fixture> {
    use MoveSet::*;
    match name {
        "gen2-disconnected" => fixture(
            "gen2-disconnected",
            vec![vec![3, 3, 2, 2, 2, 2, 0, 0], vec![3, 3, 1, 1, 1, 1, 0, 0]],
            &[&[1, 2, 7, 8], &[3, 4, 5, 6]],
            &[&[3, 4, 5, 6], &[1, 2, 7, 8]],
            vec![reach(ExchangeOnly, false, None), Expectation::Connected(false)],
        ),
        "gen2-no-optimal" => fixture(
            "gen2-no-optimal",
            vec![vec![5, 3, 1, 0, 2, 2], vec![0, 3, 1, 5, 2, 2]],
            &[&[2, 3, 4], &[1, 5, 6]],
            &[&[4, 5, 6], &[1, 2, 3]],
            vec![
                Expectation::Connected(true),
                Expectation::Distance(2),
                Expectation::Optimal { moves: ExchangeOnly, found: false },
                reach(ExchangeOnly, true, None),
            ],
        ),
        "idenbin3-no-optimal" => fixture(
            "idenbin3-no-optimal",
            vec![vec![1, 1, 1, 0, 0, 0]; 3],
            &[&[2, 6], &[3, 4], &[1, 5]],
            &[&[1, 4], &[2, 5], &[3, 6]],
            vec![
                Expectation::Connected(true),
                Expectation::Distance(3),
                Expectation::Optimal { moves: ExchangeOnly, found: false },
                reach(ExchangeOnly, true, Some(4)),
            ],
        ),
        "binary3-disconnected" => fixture(
            "binary3-disconnected",
            vec![vec![1, 0, 1, 0], vec![1, 0, 1, 0], vec![0, 1, 1, 0]],
            &[&[1, 2], &[3, 4], &[]],
            &[&[3, 4], &[1, 2], &[]],
            vec![reach(ExchangeOnly, false, None), Expectation::Connected(false)],
        ),
        "iden3-disconnected" => fixture(
            "iden3-disconnected",
            vec![vec![4, 3, 1, 4, 2, 2, 4]; 3],
            &[&[1, 2, 3], &[4, 5, 6], &[7]],
            &[&[1, 5, 6], &[2, 3, 4], &[7]],
            vec![reach(ExchangeOnly, false, None), Expectation::Connected(false)],
        ),
        "transfer2-disconnected" => fixture(
            "transfer2-disconnected",
            vec![vec![1, 1, 1, 1]; 2],
            &[&[1, 2], &[3, 4]],
            &[&[3, 4], &[1, 2]],
            vec![reach(TransferOnly, false, None), reach(ExchangeAndTransfer, true, None)],
        ),
        "xt3-heavy-example" => fixture(
            "xt3-heavy-example",
            vec![vec![4, 3, 1, 4, 2, 2, 4]; 3],
            &[&[1, 2, 3], &[4, 5, 6], &[7]],
            &[&[1, 5, 6], &[4, 2, 3], &[7]],
            vec![
                Expectation::HeavyConstruction {
                    length: 4,
                    first: Move::Transfer { i: 0, j: 2, g: 1 },
                },
                reach(ExchangeAndTransfer, true, None),
            ],
        ),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn verdict(r: &PathResult) -> String {
    match r {
        PathResult::Found { length, .. } => format!("Found (length {length})"),
        PathResult::NotFound => "NotFound".into(),
        PathResult::BudgetExhausted => "BudgetExhausted".into(),
    }
}

fn check_one(f: &Fixture, e: &Expectation, budget: SearchBudget) -> Result<CheckOutcome> {
    let (inst, a, b) = (&f.instance, &f.source, &f.target);
    let outcome = |claim: String, observed: String, passed: bool| CheckOutcome { claim, observed, passed };
    Ok(match e {
        Expectation::Reach { moves, found, length } => {
            let r = ef1_reach(inst, a, b, *moves, budget)?;
            let ok = match &r {
                PathResult::Found { path, length: l } => {
                    *found && length.is_none_or(|want| want == *l) && verify_path(inst, a, b, path, true).is_ok()
                }
                PathResult::NotFound => !*found,
                PathResult::BudgetExhausted => false,
            };
            let want = match (found, length) {
                (true, Some(l)) => format!("Found (length {l})"),
                (true, None) => "Found".into(),
                (false, _) => "NotFound".into(),
            };
            outcome(format!("ef1_reach {moves:?} = {want}"), verdict(&r), ok)
        }
        Expectation::Distance(d) => {
            let bfs = bfs_distance(inst, a, b, MoveSet::ExchangeOnly, budget)?;
            let cycles = distance_via_cycles(inst, a, b, budget.max_states)?;
            outcome(
                format!("distance = {d} by BFS and by cycles"),
                format!("BFS {bfs:?}, cycles {cycles}"),
                bfs == Distance::Exact(*d) && cycles == *d,
            )
        }
        Expectation::Optimal { moves, found } => {
            let r = optimal_ef1_path(inst, a, b, *moves, budget)?;
            let ok = match &r {
                PathResult::Found { path, .. } => *found && verify_path(inst, a, b, path, true).is_ok(),
                PathResult::NotFound => !*found,
                PathResult::BudgetExhausted => false,
            };
            let want = if *found { "Found" } else { "NotFound" };
            outcome(format!("optimal_ef1_path {moves:?} = {want}"), verdict(&r), ok)
        }
        Expectation::Connected(want) => {
            let sizes = a.size_vector();
            let c = ef1_component_connected(inst, Some(&sizes), MoveSet::ExchangeOnly, budget)?;
            outcome(
                format!("EF1 exchange graph over sizes {sizes:?} connected = {want}"),
                format!("connected = {}, components {:?}", c.connected, c.component_sizes),
                c.connected == *want,
            )
        }
        Expectation::HeavyConstruction { length, first } => {
            let c = path_three_heavy_xt(inst, a, b)?;
            let ok = c.moves.len() == *length
                && c.moves.first() == Some(first)
                && verify_path(inst, a, b, &c.moves, true).is_ok();
            let moves: Vec<String> = c.moves.iter().map(ToString::to_string).collect();
            outcome(
                format!("three-heavy construction has {length} moves, first {first}"),
                moves.join(", "),
                ok,
            )
        }
    })
}

/// Checks both endpoints are EF1, then every expectation in order.
pub fn verify(f: &Fixture, budget: SearchBudget) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::with_capacity(f.expectations.len() + 1);
    let ends = (is_ef1(&f.instance, &f.source)?, is_ef1(&f.instance, &f.target)?);
    out.push(CheckOutcome {
        claim: "source and target are EF1".into(),
        observed: format!("source {}, target {}", ends.0, ends.1),
        passed: ends == (true, true),
    });
    for e in &f.expectations {
        out.push(check_one(f, e, budget)?);
    }
    Ok(out)
}
