use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fmhs_core::suite::{run_suite, SuiteConfig};

fn config(jobs: Option<usize>) -> SuiteConfig {
    SuiteConfig {
        ids: ["thm1_1", "prop2_2", "thm2_4", "cor1_4_triple"].map(String::from).to_vec(),
        n: Some(2..=5),
        max_cap: Some(3),
        jobs,
        ..Default::default()
    }
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| black_box(run_suite(&config(Some(1))).unwrap())));
    g.bench_function("parallel", |b| b.iter(|| black_box(run_suite(&config(None)).unwrap())));
    g.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
