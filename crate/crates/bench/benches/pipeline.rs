use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use sunff_core::algebra::AngleSet;
use sunff_core::combinatorics::IrrepShape;
use sunff_core::expander::{build_channel, spectral_gap, ExpanderParams};
use sunff_core::pipeline::simulate;

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    let angles = AngleSet::random(2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(13));
    group.bench_function("n2_m8_l128", |b| b.iter(|| simulate(IrrepShape::new(2, 8).unwrap(), &angles, 128).unwrap()));
    let angles = AngleSet::random(3, &mut rand_chacha::ChaCha8Rng::seed_from_u64(13));
    group.bench_function("n3_m2_l32", |b| b.iter(|| simulate(IrrepShape::new(3, 2).unwrap(), &angles, 32).unwrap()));
    group.finish();
}

fn expander(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_gap");
    group.sample_size(10);
    for n in [10, 30] {
        let kraus = build_channel(&ExpanderParams::new(5, n).unwrap()).unwrap();
        group.bench_function(format!("p5_n{n}"), |b| b.iter(|| spectral_gap(&kraus).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, simulation, expander);
criterion_main!(benches);
