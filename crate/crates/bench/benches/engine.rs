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

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ef1reach_bench::{cycle_union, paired_identical, random_instance, round_robin, small_gadget};
use ef1reach::gadgets::{catalog, partition_from_assignment};
use ef1reach::{
    build_item_graph, ef1_component_connected, ef1_reach, is_ef1, max_cycle_partition, path_two_identical, MoveSet,
    SearchBudget,
};

fn ef1_check(c: &mut Criterion) {
    let inst = random_instance(8, 64, 100, 7);
    let alloc = round_robin(&inst);
    c.bench_function("is_ef1 8x64", |b| b.iter(|| is_ef1(black_box(&inst), black_box(&alloc)).unwrap()));
}

fn search(c: &mut Criterion) {
    let f = catalog("idenbin3-no-optimal").unwrap();
    c.bench_function("ef1_reach idenbin3", |b| {
        b.iter(|| ef1_reach(&f.instance, &f.source, &f.target, MoveSet::ExchangeOnly, SearchBudget::default()).unwrap())
    });
    let f = catalog("gen2-disconnected").unwrap();
    let sizes = f.source.size_vector();
    c.bench_function("connectivity gen2 4+4", |b| {
        b.iter(|| {
            ef1_component_connected(&f.instance, Some(&sizes), MoveSet::ExchangeOnly, SearchBudget::default()).unwrap()
        })
    });
}

fn cycles(c: &mut Criterion) {
    let g = cycle_union(10, 12, 4, 3);
    c.bench_function("max_cycle_partition 10v", |b| {
        b.iter(|| max_cycle_partition(black_box(&g), 50_000_000).unwrap())
    });
    let (_, a, bb) = paired_identical(200, 5);
    c.bench_function("build_item_graph m=400", |b| b.iter(|| build_item_graph(&a, &bb).unwrap()));
}

fn polypaths(c: &mut Criterion) {
    let (inst, a, bb) = paired_identical(40, 11);
    c.bench_function("path_two_identical m=80", |b| {
        b.iter(|| path_two_identical(black_box(&inst), &a, &bb).unwrap())
    });
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("gadget");
    group.sample_size(10);
    group.bench_function("build p=40", |b| b.iter(|| small_gadget(black_box(40))));
    let g = small_gadget(40);
    group.bench_function("partition+validate p=40", |b| {
        b.iter(|| partition_from_assignment(&g, &[true, true, true]).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ef1_check, search, cycles, polypaths, gadgets);
criterion_main!(benches);
