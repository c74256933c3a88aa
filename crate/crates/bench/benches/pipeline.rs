use criterion::{black_box, criterion_group, criterion_main, Criterion};

use wasserq::{
    brute_force_minimize, build_qubo, min_cost_assignment, simulated_anneal, wasserstein_distance,
    AnnealSchedule, CostMatrix, Norm, Penalty, ReducedBipartiteGraph,
};
use wasserq_bench::random_diagram;

fn bench_graph_and_qubo(c: &mut Criterion) {
    let x = random_diagram(1, 6);
    let y = random_diagram(2, 5);
    c.bench_function("build_graph_6x5", |b| {
        b.iter(|| {
            ReducedBipartiteGraph::new(
                black_box(x.clone()),
                black_box(y.clone()),
                2.0,
                Norm::Q(2.0),
            )
        })
    });

    let g = ReducedBipartiteGraph::new(x, y, 2.0, Norm::Q(2.0));
    c.bench_function("build_qubo_6x5", |b| {
        b.iter(|| build_qubo(black_box(&g), &Penalty::auto()).unwrap())
    });

    let x = random_diagram(3, 24);
    let y = random_diagram(4, 20);
    let g = ReducedBipartiteGraph::new(x, y, 2.0, Norm::Q(2.0));
    c.bench_function("build_qubo_24x20", |b| {
        b.iter(|| build_qubo(black_box(&g), &Penalty::auto()).unwrap())
    });
}

fn bench_energy(c: &mut Criterion) {
    let g = ReducedBipartiteGraph::new(
        random_diagram(5, 8),
        random_diagram(6, 8),
        2.0,
        Norm::Q(2.0),
    );
    let q = build_qubo(&g, &Penalty::auto()).unwrap();
    let bits = wasserq::BitAssignment::new((0..q.num_vars()).map(|i| i % 3 == 0).collect());
    c.bench_function("energy_8x8", |b| {
        b.iter(|| q.energy(black_box(&bits)).unwrap())
    });
}

fn bench_brute_force(c: &mut Criterion) {
    let g = ReducedBipartiteGraph::new(
        random_diagram(7, 3),
        random_diagram(8, 3),
        2.0,
        Norm::Q(2.0),
    );
    let q = build_qubo(&g, &Penalty::auto()).unwrap();
    c.bench_function("brute_force_m15", |b| {
        b.iter(|| brute_force_minimize(black_box(&q)).unwrap())
    });
}

fn bench_anneal(c: &mut Criterion) {
    let g = ReducedBipartiteGraph::new(
        random_diagram(9, 3),
        random_diagram(10, 2),
        2.0,
        Norm::Q(2.0),
    );
    let q = build_qubo(&g, &Penalty::auto()).unwrap();
    let schedule = AnnealSchedule::new(0.01, 100.0, 200).unwrap();
    c.bench_function("anneal_3x2_100reads", |b| {
        b.iter(|| simulated_anneal(black_box(&q), &schedule, 100, 0))
    });
}

fn bench_oracle(c: &mut Criterion) {
    let x = random_diagram(11, 16);
    let y = random_diagram(12, 16);
    c.bench_function("cost_matrix_16x16", |b| {
        b.iter(|| CostMatrix::new(black_box(&x), black_box(&y), 2.0, Norm::Q(2.0)))
    });
    let m = CostMatrix::new(&x, &y, 2.0, Norm::Q(2.0));
    c.bench_function("hungarian_32", |b| {
        b.iter(|| min_cost_assignment(black_box(&m)))
    });
    c.bench_function("wasserstein_16x16", |b| {
        b.iter(|| wasserstein_distance(black_box(&x), black_box(&y), 2.0, Norm::Q(2.0)))
    });
}

criterion_group!(
    benches,
    bench_graph_and_qubo,
    bench_energy,
    bench_brute_force,
    bench_anneal,
    bench_oracle
);
criterion_main!(benches);
