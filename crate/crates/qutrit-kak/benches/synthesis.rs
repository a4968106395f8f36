use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qutrit_kak::numkernel::random::haar_unitary;
use qutrit_kak::synth::{synthesize, synthesize_batch, SynthesisOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn options(parallel: bool) -> SynthesisOptions {
    SynthesisOptions {
        parallel,
        ..SynthesisOptions::default()
    }
}

// Without the `parallel` feature both rows run the sequential path.
fn single(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    group.sample_size(10);
    for n in [3, 4] {
        let u = haar_unitary(3usize.pow(n), &mut ChaCha8Rng::seed_from_u64(n as u64));
        for (label, parallel) in [("sequential", false), ("parallel", true)] {
            group.bench_with_input(BenchmarkId::new(label, n), &u, |b, u| {
                b.iter(|| synthesize(u, &options(parallel)).unwrap())
            });
        }
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let inputs: Vec<_> = (0..32).map(|_| haar_unitary(27, &mut rng)).collect();
    let mut group = c.benchmark_group("batch_u27");
    group.sample_size(10);
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_function(label, |b| b.iter(|| synthesize_batch(&inputs, &options(parallel))));
    }
    group.finish();
}

criterion_group!(benches, single, batch);
criterion_main!(benches);
