use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use icl_bench::{oracle_inputs, symmetric_inverse_monoid};
use icl_core::bicyclic::{normalizer_bicyclic, BicyclicTrace, Tail};
use icl_core::pairs::build_lattice;
use icl_core::{left_congruence_closure, semilattice_congruences, GenPairSet, Strategy};

fn lattices(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_lattice");
    for (name, s) in oracle_inputs() {
        group.bench_function(name, |b| b.iter(|| build_lattice(black_box(&s)).unwrap()));
    }
    let i3 = symmetric_inverse_monoid(3);
    group.sample_size(10);
    group.bench_function("I3", |b| b.iter(|| build_lattice(black_box(&i3)).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    for (name, s) in oracle_inputs() {
        for strategy in [Strategy::Partitions, Strategy::PrincipalJoins] {
            group.bench_function(format!("{name}/{strategy}"), |b| {
                b.iter(|| icl_core::oracle::brute_force_left_congruences(black_box(&s), strategy).unwrap())
            });
        }
    }
    group.finish();
}

fn closures(c: &mut Criterion) {
    let i3 = symmetric_inverse_monoid(3);
    let pairs = GenPairSet::from_pairs([(1, 5), (7, 11)]);
    c.bench_function("left_congruence_closure/I3", |b| {
        b.iter(|| left_congruence_closure(black_box(&i3), black_box(&pairs)))
    });
    c.bench_function("semilattice_congruences/I3", |b| {
        b.iter(|| semilattice_congruences(black_box(&i3)))
    });
}

fn bicyclic(c: &mut Criterion) {
    let tau = BicyclicTrace::new(vec![3, 1, 4], Tail::Periodic(vec![2, 5, 2])).unwrap();
    c.bench_function("normalizer_bicyclic", |b| {
        b.iter(|| normalizer_bicyclic(black_box(&tau)))
    });
}

criterion_group!(benches, lattices, oracle, closures, bicyclic);
criterion_main!(benches);
