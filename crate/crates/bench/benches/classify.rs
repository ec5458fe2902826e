use criterion::{criterion_group, criterion_main, Criterion};
use liouville_core::counterexamples::{h1_witness, h2_witness};
use liouville_core::{classify, Ellipticity, HamiltonianSpec, Operator, ProblemInstance};
use std::hint::black_box;

fn instance(ham: HamiltonianSpec) -> ProblemInstance {
    ProblemInstance::new(4, Ellipticity::new(1.0, 2.0).unwrap(), Operator::Plus, ham).unwrap()
}

fn classify_verdicts(c: &mut Criterion) {
    let holds = instance(HamiltonianSpec::H1 { q: 2.0, gamma: 1.1 });
    let fails = instance(HamiltonianSpec::H2 { q: 1.0, gamma: 1.5 });
    c.bench_function("classify_holds", |b| b.iter(|| classify(black_box(&holds)).unwrap()));
    c.bench_function("classify_fails_with_witness", |b| b.iter(|| classify(black_box(&fails)).unwrap()));
}

fn witnesses(c: &mut Criterion) {
    let ell = Ellipticity::new(1.0, 2.0).unwrap();
    c.bench_function("h1_witness", |b| b.iter(|| h1_witness(black_box(3.0), 1.6, &ell, 4).unwrap()));
    c.bench_function("h2_witness", |b| b.iter(|| h2_witness(black_box(1.0), 1.5, &ell, 4).unwrap()));
}

fn sweep_20x20(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("h2_20x20", |b| {
        b.iter(|| {
            for i in 0..20 {
                for j in 0..20 {
                    let ham = HamiltonianSpec::H2 { q: i as f64 * 0.15, gamma: 0.5 + j as f64 * 0.1 };
                    black_box(classify(&instance(ham)).unwrap());
                }
            }
        })
    });
    g.finish();
}

criterion_group!(benches, classify_verdicts, witnesses, sweep_20x20);
criterion_main!(benches);
