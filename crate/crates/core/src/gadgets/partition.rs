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

//! Four identical agents whose optimal EF1 path exists exactly when a
//! multiset splits into two halves of equal sum.

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};

/// Goods `a0..ak`, `b0..bk`, `c1`, `c2`, `d1`, `d2` in that order, so
/// `m = 2k + 6`. Agent 1 starts with the `a`s, agent 2 with the `b`s; the
/// target swaps the light `a`s and `b`s and the `c` and `d` pairs.
pub fn gen_partition_instance(t: &[u64]) -> Result<(Instance, Allocation, Allocation)> {
    if t.is_empty() {
        return Err(Error::Precondition("the multiset is empty".into()));
    }
    if t.contains(&0) {
        return Err(Error::Precondition("the multiset must hold positive integers".into()));
    }
    let total = t
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(Error::Overflow("summing the multiset"))?;
    if total % 2 == 1 {
        return Err(Error::OddSum(total));
    }
    let s = total / 2;
    let k = t.len();
    let mut goods = Vec::with_capacity(2 * k + 6);
    goods.extend((0..=k).map(|i| format!("a{i}")));
    goods.extend((0..=k).map(|i| format!("b{i}")));
    goods.extend(["c1", "c2", "d1", "d2"].map(String::from));
    let mut row = vec![2 * s];
    row.extend_from_slice(t);
    row.push(2 * s);
    row.extend(std::iter::repeat_n(0, k));
    row.extend([2 * s, 0, s, s]);
    let inst = Instance::identical(4, goods, row)?;

    let a_light: Vec<usize> = (1..=k).collect();
    let b_light: Vec<usize> = (k + 2..=2 * k + 1).collect();
    let (a0, b0) = (0, k + 1);
    let c = vec![2 * k + 2, 2 * k + 3];
    let d = vec![2 * k + 4, 2 * k + 5];
    let m = 2 * k + 6;
    let with = |head: usize, tail: &[usize]| {
        let mut v = vec![head];
        v.extend_from_slice(tail);
        v
    };
    let a = Allocation::from_bundles(m, &[with(a0, &a_light), with(b0, &b_light), c.clone(), d.clone()])?;
    let b = Allocation::from_bundles(m, &[with(a0, &b_light), with(b0, &a_light), d, c])?;
    Ok((inst, a, b))
}

/// Whether `t` splits into two sub-multisets of equal sum.
pub fn has_equal_split(t: &[u64]) -> bool {
    let total: u64 = t.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &x in t {
        let x = x as usize;
        for s in (x..=half).rev() {
            reach[s] |= reach[s - x];
        }
    }
    reach[half]
}
