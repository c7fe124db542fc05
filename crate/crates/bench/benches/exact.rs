use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ueb_bench::{random_cyclotomic, random_matrix};
use ueb_core::{
    build_g165, heisenberg_nice_rep, induce_representation, pauli_rep, verify_nice, verify_ueb, ExactMatrix,
    FiniteGroup, Heisenberg, PairPlan, PhasedScalar,
};

fn cyclotomic(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic_mul");
    for order in [12u32, 55, 165] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b) = (random_cyclotomic(&mut rng, order), random_cyclotomic(&mut rng, order));
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |bench, _| {
            bench.iter(|| black_box(&a).mul(black_box(&b)))
        });
    }
    group.finish();
}

fn matmul(c: &mut Criterion) {
    let mut group = c.benchmark_group("matmul");
    for n in [4usize, 8, 16] {
        let (a, b) = (random_matrix(n, 8, 1), random_matrix(n, 8, 2));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| black_box(&a).matmul(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for d in [4usize, 8] {
        let rep = pauli_rep(d).unwrap();
        let members = rep.members();
        group.bench_with_input(BenchmarkId::new("ueb_pauli", d), &d, |bench, &d| {
            bench.iter(|| verify_ueb(d, &members).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("nice_pauli", d), &d, |bench, _| {
            bench.iter(|| verify_nice(&rep, PairPlan::All).unwrap())
        });
    }
    let h = heisenberg_nice_rep(7).unwrap();
    group.bench_function("nice_heisenberg_7", |bench| bench.iter(|| verify_nice(&h, PairPlan::All).unwrap()));
    group.finish();
}

fn counterexample(c: &mut Criterion) {
    let g = build_g165().unwrap();
    let rep = g.nice_rep().unwrap();
    let sample: Vec<_> = rep.elements().iter().step_by(97).cloned().collect();
    let mut group = c.benchmark_group("g165");
    group.sample_size(10);
    group.bench_function("trace_sample", |bench| {
        bench.iter(|| sample.iter().filter(|t| !g.trace(t).is_zero()).count())
    });
    group.bench_function("phase_pair", |bench| bench.iter(|| g.phase(&sample[3], &sample[7]).unwrap()));
    group.finish();
}

fn induction(c: &mut Criterion) {
    let h = Heisenberg::new(5);
    let center = h.center();
    c.bench_function("induce_h5_center", |bench| {
        bench.iter(|| {
            induce_representation(&h, &center, 1, |g| ExactMatrix::diag(vec![PhasedScalar::zeta(5, g.z as i64)])).unwrap()
        })
    });
}

criterion_group!(benches, cyclotomic, matmul, verification, counterexample, induction);
criterion_main!(benches);
