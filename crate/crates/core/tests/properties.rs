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

mod common;

use common::{naive_distance, naive_ef1, owners};
use ef1reach::distance::{build_item_graph, greedy_circuit_partition, max_cycle_partition, path_from_partition};
use ef1reach::polypaths::{heavy_shape, path_identical_binary, path_three_heavy_xt, path_two_binary, path_two_identical, path_xt_via_dummies, BaseAlgorithm};
use ef1reach::search::{ef1_allocations, ef1_component_connected};
use ef1reach::*;
use num_rational::Ratio;
use proptest::prelude::*;

/// `(rows, owners of A, owners of B)` with B a permutation of A's owners.
fn instance_pair(max_n: usize, max_m: usize, max_u: u64) -> impl Strategy<Value = (Vec<Vec<u64>>, Vec<usize>, Vec<usize>)> {
    (2..=max_n, 1..=max_m).prop_flat_map(move |(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(0..=max_u, m), n),
            proptest::collection::vec(0..n, m),
        )
            .prop_flat_map(|(rows, a)| {
                let b = Just(a.clone()).prop_shuffle();
                (Just(rows), Just(a), b)
            })
    })
}

fn build(rows: &[Vec<u64>], a: &[usize], b: &[usize]) -> (Instance, Allocation, Allocation) {
    let inst = Instance::with_numbered_goods(rows.to_vec()).unwrap();
    let n = inst.agents();
    (inst, Allocation::from_owners(n, a).unwrap(), Allocation::from_owners(n, b).unwrap())
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn ef1_survives_row_scaling(
        (rows, a, _) in instance_pair(4, 7, 6),
        scales in proptest::collection::vec((1i64..20, 1i64..20), 4),
    ) {
        let (inst, alloc, _) = build(&rows, &a, &a);
        let scaled: Vec<Vec<Ratio<i64>>> = rows
            .iter()
            .zip(&scales)
            .map(|(row, &(p, q))| row.iter().map(|&u| Ratio::new(u as i64 * p, q)).collect())
            .collect();
        let other = normalize_instance(inst.agents(), inst.good_names().to_vec(), &scaled).unwrap();
        prop_assert_eq!(is_ef1(&inst, &alloc).unwrap(), is_ef1(&other, &alloc).unwrap());
    }

    #[test]
    fn exchange_is_an_involution((rows, a, _) in instance_pair(4, 7, 3), g in 0usize..7, h in 0usize..7) {
        let (_, alloc, _) = build(&rows, &a, &a);
        let m = alloc.goods();
        let (g, h) = (g % m, h % m);
        prop_assume!(alloc.owner(g) != alloc.owner(h));
        let mv = Move::Exchange { i: alloc.owner(g), j: alloc.owner(h), g, h };
        let once = apply_move(&alloc, &mv).unwrap();
        prop_assert_ne!(&once, &alloc);
        let back = Move::Exchange { i: once.owner(h), j: once.owner(g), g: h, h: g };
        prop_assert_eq!(apply_move(&once, &back).unwrap(), alloc);
    }

    #[test]
    fn ef1_matches_definition((rows, a, _) in instance_pair(4, 8, 9)) {
        let (inst, alloc, _) = build(&rows, &a, &a);
        prop_assert_eq!(is_ef1(&inst, &alloc).unwrap(), naive_ef1(&inst, &a));
    }

    #[test]
    fn violations_empty_iff_ef1((rows, a, _) in instance_pair(4, 8, 9)) {
        let (inst, alloc, _) = build(&rows, &a, &a);
        let v = ef1_violations(&inst, &alloc).unwrap();
        prop_assert_eq!(v.is_empty(), is_ef1(&inst, &alloc).unwrap());
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exchange_distance_is_symmetric_and_matches_naive((rows, a, b) in instance_pair(3, 7, 2)) {
        let (inst, x, y) = build(&rows, &a, &b);
        let d1 = bfs_distance(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap();
        let d2 = bfs_distance(&inst, &y, &x, MoveSet::ExchangeOnly, budget()).unwrap();
        prop_assert_eq!(d1, d2);
        prop_assert_eq!(d1.exact(), naive_distance(&inst, &a, &b, true, false, false));
    }

    #[test]
    fn transfer_distances_are_symmetric(
        (rows, a, _) in instance_pair(3, 5, 2),
        b_seed in proptest::collection::vec(0usize..3, 5),
    ) {
        let n = rows.len();
        let b: Vec<usize> = b_seed.iter().take(a.len()).map(|&x| x % n).collect();
        let (inst, x, y) = build(&rows, &a, &b);
        for moves in [MoveSet::TransferOnly, MoveSet::ExchangeAndTransfer] {
            let d1 = bfs_distance(&inst, &x, &y, moves, budget()).unwrap();
            let d2 = bfs_distance(&inst, &y, &x, moves, budget()).unwrap();
            prop_assert_eq!(d1, d2);
            prop_assert_eq!(d1.exact(), naive_distance(&inst, &a, &b, moves.exchanges(), true, false));
        }
    }

    #[test]
    fn ef1_searches_return_valid_paths((rows, a, b) in instance_pair(3, 7, 4)) {
        let (inst, x, y) = build(&rows, &a, &b);
        prop_assume!(is_ef1(&inst, &x).unwrap() && is_ef1(&inst, &y).unwrap());
        let d = bfs_distance(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap().exact().unwrap();
        let reach = ef1_reach(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap();
        prop_assert_eq!(reach.length(), naive_distance(&inst, &a, &b, true, false, true));
        if let PathResult::Found { path, length } = &reach {
            prop_assert!(*length >= d);
            verify_path(&inst, &x, &y, path, true).unwrap();
        }
        let opt = optimal_ef1_path(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap();
        match &opt {
            PathResult::Found { path, length } => {
                prop_assert_eq!(*length, d);
                verify_path(&inst, &x, &y, path, true).unwrap();
            }
            PathResult::NotFound => prop_assert!(reach.length() != Some(d)),
            PathResult::BudgetExhausted => prop_assert!(false, "budget exhausted"),
        }
    }

    #[test]
    fn connected_graphs_reach_every_pair((rows, a, _) in instance_pair(3, 6, 2)) {
        let (inst, x, _) = build(&rows, &a, &a);
        let sizes = x.size_vector();
        let c = ef1_component_connected(&inst, Some(&sizes), MoveSet::ExchangeOnly, budget()).unwrap();
        let all = ef1_allocations(&inst, &sizes).unwrap();
        prop_assert_eq!(c.component_sizes.iter().sum::<usize>(), all.len());
        if c.connected && !all.is_empty() {
            for y in all.iter().step_by(3) {
                prop_assert!(ef1_reach(&inst, &all[0], y, MoveSet::ExchangeOnly, budget()).unwrap().is_found());
            }
        }
    }

    #[test]
    fn cycle_distance_matches_bfs((rows, a, b) in instance_pair(4, 8, 1)) {
        let (inst, x, y) = build(&rows, &a, &b);
        let bfs = bfs_distance(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap().exact().unwrap();
        prop_assert_eq!(distance_via_cycles(&inst, &x, &y, 1_000_000).unwrap(), bfs);
        let g = build_item_graph(&x, &y).unwrap();
        let greedy = greedy_circuit_partition(&g).unwrap();
        let (best, witness) = max_cycle_partition(&g, 1_000_000).unwrap();
        greedy.validate(&g).unwrap();
        witness.validate(&g).unwrap();
        prop_assert_eq!(best, witness.len());
        prop_assert!(best >= greedy.len());
        for part in [&greedy, &witness] {
            let path = path_from_partition(&x, &y, part).unwrap();
            verify_path(&inst, &x, &y, &path, false).unwrap();
        }
        prop_assert_eq!(path_from_partition(&x, &y, &witness).unwrap().len(), bfs);
    }

    #[test]
    fn two_agent_constructions_are_optimal(
        (rows, a, b) in instance_pair(2, 9, 6),
        binary in any::<bool>(),
    ) {
        let rows: Vec<Vec<u64>> = if binary {
            rows.iter().map(|r| r.iter().map(|u| u % 2).collect()).collect()
        } else {
            vec![rows[0].clone(); 2]
        };
        let (inst, x, y) = build(&rows, &a, &b);
        prop_assume!(is_ef1(&inst, &x).unwrap() && is_ef1(&inst, &y).unwrap());
        let c = if binary { path_two_binary(&inst, &x, &y) } else { path_two_identical(&inst, &x, &y) }.unwrap();
        let d = bfs_distance(&inst, &x, &y, MoveSet::ExchangeOnly, budget()).unwrap().exact().unwrap();
        prop_assert_eq!(c.moves.len(), d);
        verify_path(&inst, &x, &y, &c.moves, true).unwrap();
        let m = inst.goods().max(1);
        prop_assert!(c.candidate_checks <= m * m * m);
    }

    #[test]
    fn identical_binary_paths_are_ef1((rows, a, b) in instance_pair(4, 8, 1)) {
        let rows = vec![rows[0].clone(); rows.len()];
        let (inst, x, y) = build(&rows, &a, &b);
        prop_assume!(is_ef1(&inst, &x).unwrap() && is_ef1(&inst, &y).unwrap());
        let c = path_identical_binary(&inst, &x, &y).unwrap();
        verify_path(&inst, &x, &y, &c.moves, true).unwrap();
        prop_assert!(c.misplaced_trace.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn dummy_padding_paths_replay(
        (rows, a, _) in instance_pair(3, 6, 3),
        b_seed in proptest::collection::vec(0usize..4, 6),
        base in 0usize..3,
    ) {
        let n = rows.len();
        let b: Vec<usize> = b_seed.iter().take(a.len()).map(|&x| x % n).collect();
        let (base, rows) = match base {
            0 => (BaseAlgorithm::TwoIdentical, vec![rows[0].clone(); 2]),
            1 => (BaseAlgorithm::TwoBinary, rows[..2].iter().map(|r| r.iter().map(|u| u % 2).collect()).collect()),
            _ => (BaseAlgorithm::IdenticalBinary, vec![rows[0].iter().map(|u| u % 2).collect(); n]),
        };
        let n = rows.len();
        let a: Vec<usize> = a.iter().map(|&x| x % n).collect();
        let b: Vec<usize> = b.iter().map(|&x| x % n).collect();
        let (inst, x, y) = build(&rows, &a, &b);
        prop_assume!(is_ef1(&inst, &x).unwrap() && is_ef1(&inst, &y).unwrap());
        let c = path_xt_via_dummies(&inst, &x, &y, base).unwrap();
        let mut cur = x.clone();
        for mv in &c.moves {
            cur = apply_move(&cur, mv).unwrap();
            prop_assert!(is_ef1(&inst, &cur).unwrap());
        }
        prop_assert_eq!(cur, y);
    }

    #[test]
    fn three_heavy_has_k_plus_two_moves(
        k in 1usize..=4,
        tails in proptest::collection::vec((0u64..=8, 0u64..=8), 4),
        extra in proptest::collection::vec(0u64..=8, 3),
    ) {
        let (inst, a, b) = heavy_instance(&tails[..k], &extra);
        heavy_shape(&inst, &a, &b).unwrap();
        let c = path_three_heavy_xt(&inst, &a, &b).unwrap();
        prop_assert_eq!(c.moves.len(), k + 2);
        verify_path(&inst, &a, &b, &c.moves, true).unwrap();
    }
}

/// Agent 1 holds `a0, a1..ak`, agent 2 `b0, b1..bk`, agent 3 `c0`; heavy
/// goods are worth at least either tail sum.
fn heavy_instance(tails: &[(u64, u64)], extra: &[u64]) -> (Instance, Allocation, Allocation) {
    let k = tails.len();
    let sa: u64 = tails.iter().map(|t| t.0).sum();
    let sb: u64 = tails.iter().map(|t| t.1).sum();
    let heavy = sa.max(sb);
    let mut row = vec![heavy + extra[0]];
    row.extend(tails.iter().map(|t| t.0));
    row.push(heavy + extra[1]);
    row.extend(tails.iter().map(|t| t.1));
    row.push(heavy + extra[2]);
    let inst = Instance::with_numbered_goods(vec![row; 3]).unwrap();
    let m = 2 * k + 3;
    let a_tail: Vec<usize> = (1..=k).collect();
    let b_tail: Vec<usize> = (k + 2..=2 * k + 1).collect();
    let with = |h: usize, t: &[usize]| std::iter::once(h).chain(t.iter().copied()).collect::<Vec<_>>();
    let a = Allocation::from_bundles(m, &[with(0, &a_tail), with(k + 1, &b_tail), vec![m - 1]]).unwrap();
    let b = Allocation::from_bundles(m, &[with(0, &b_tail), with(k + 1, &a_tail), vec![m - 1]]).unwrap();
    (inst, a, b)
}

#[test]
fn naive_oracle_agrees_on_a_known_pair() {
    let inst = Instance::with_numbered_goods(vec![vec![5, 3, 1, 0, 2, 2], vec![0, 3, 1, 5, 2, 2]]).unwrap();
    let from = [0, 0, 0, 1, 1, 1];
    let to = [1, 1, 1, 0, 0, 0];
    assert_eq!(naive_distance(&inst, &from, &to, true, false, false), Some(3));
    let x = Allocation::from_owners(2, &from).unwrap();
    assert_eq!(owners(&x), from);
}
