use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symqaoa_bench::count_objective;
use symqaoa_core::combinatorics::{character, partitions, Partition};
use symqaoa_core::hamiltonians::{default_epsilon, problem_hamiltonian, reduced_mixer};
use symqaoa_core::qaoa::{ChainOrder, Qaoa, QaoaParams};
use symqaoa_core::schur_weyl::{ground_state, sector_projector};
use symqaoa_core::tensor::spectral;

fn combinatorics(c: &mut Criterion) {
    c.bench_function("partitions(12)", |b| b.iter(|| partitions(black_box(12), 12)));
    c.bench_function("character table S_8", |b| {
        let shapes = partitions(8, 8);
        b.iter(|| {
            for l in &shapes {
                for mu in &shapes {
                    black_box(character(l, mu).unwrap());
                }
            }
        })
    });
}

fn projectors(c: &mut Criterion) {
    let mut g = c.benchmark_group("sector_projector");
    g.sample_size(10);
    for (n, d) in [(4, 3), (6, 2), (6, 3)] {
        let shape = partitions(n, d)[1].clone();
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}d{d}-{shape}")), &shape, |b, s| {
            b.iter(|| sector_projector(s, n, d).unwrap())
        });
    }
    g.finish();
}

fn mixer_spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduced_mixer spectrum");
    g.sample_size(10);
    for (n, d, parts) in [(5, 2, vec![3, 2]), (6, 3, vec![4, 1, 1]), (8, 2, vec![5, 3])] {
        let shape = Partition::new(parts).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}d{d}-{shape}")), &shape, |b, s| {
            b.iter(|| spectral(&reduced_mixer(s, n, d, default_epsilon(n, d)).unwrap()).unwrap())
        });
    }
    g.finish();
}

fn qaoa_evaluation(c: &mut Criterion) {
    let mut g = c.benchmark_group("qaoa expectation p=3");
    for (n, d) in [(4, 2), (8, 2), (6, 3)] {
        let shape = Partition::row(n);
        let engine = Qaoa::new(
            &problem_hamiltonian(&count_objective(n, d)).unwrap(),
            &reduced_mixer(&shape, n, d, default_epsilon(n, d)).unwrap(),
            ground_state(&shape, n, d).unwrap().vector,
            ChainOrder::default(),
        )
        .unwrap();
        let params = QaoaParams::new(vec![0.3, 1.2, 2.0], vec![0.8, 0.1, 1.7]).unwrap();
        g.bench_function(format!("n{n}d{d}"), |b| b.iter(|| engine.expectation(black_box(&params)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, combinatorics, projectors, mixer_spectrum, qaoa_evaluation);
criterion_main!(benches);
