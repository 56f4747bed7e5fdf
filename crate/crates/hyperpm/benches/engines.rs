//! Sequential (one worker) against data-parallel trial execution.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperpm::engine::{run, Algorithm, EngineOptions};
use hyperpm::families::{BenchSpec, Family};

/// One worker against every core, but at least four threads.
fn workers() -> Vec<usize> {
    vec![1, std::thread::available_parallelism().map_or(1, |n| n.get()).max(4)]
}

fn engines(c: &mut Criterion) {
    for (family, len) in [(Family::PacketPairs, 400), (Family::Interference, 150)] {
        let (naa, ws) = BenchSpec { family, k: 2, word_len: len, word_count: 1, seed: 1 }.generate().unwrap();
        let mut group = c.benchmark_group(format!("{family}-{len}"));
        group.sample_size(10);
        for alg in [Algorithm::Naive, Algorithm::FjsProj] {
            for w in workers() {
                let opts = EngineOptions { workers: w, ..Default::default() };
                group.bench_with_input(BenchmarkId::new(alg.name(), format!("workers={w}")), &opts, |b, opts| {
                    b.iter(|| black_box(run(&naa, &ws, alg, opts).unwrap().matches.len()))
                });
            }
        }
        group.finish();
    }
}

criterion_group!(benches, engines);
criterion_main!(benches);
