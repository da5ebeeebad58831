//! Sequential against rayon-parallel execution of the verification sweeps.
//! Without the `parallel` feature both arms run sequentially.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dynwg::rep::cache::IrrepCache;
use dynwg::rootdata::{LieType, Weight};
use dynwg::verify::{self, Execution, SuiteConfig};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel(None))]
}

fn bench_satake(c: &mut Criterion) {
    let mut group = c.benchmark_group("satake_rank1");
    for (name, exec) in modes() {
        let cfg = SuiteConfig { exec, ..SuiteConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, 12), &cfg, |b, cfg| b.iter(|| black_box(verify::satake_rank1(12, cfg))));
    }
    group.finish();
}

fn bench_cocycle(c: &mut Criterion) {
    // Warm cache so the sweep measures operator composition, not irrep construction.
    let dir = tempfile::tempdir().unwrap();
    let cache = IrrepCache::new(dir.path());
    let targets: Vec<(LieType, Weight)> =
        vec![("A2".parse().unwrap(), Weight(vec![1, 1])), ("B2".parse().unwrap(), Weight(vec![0, 1])), ("G2".parse().unwrap(), Weight(vec![1, 0]))];
    let mut group = c.benchmark_group("cocycle");
    group.sample_size(10);
    for (name, exec) in modes() {
        let cfg = SuiteConfig { exec, cache: Some(cache.clone()), ..SuiteConfig::default() };
        for (t, hw) in &targets {
            cfg.irrep(*t, hw).unwrap();
            group.bench_with_input(BenchmarkId::new(name, format!("{t} V{hw}")), &cfg, |b, cfg| {
                b.iter(|| black_box(verify::cocycle(*t, hw, cfg)))
            });
        }
    }
    group.finish();
}

fn bench_rep(c: &mut Criterion) {
    let mut group = c.benchmark_group("rep_suite");
    group.sample_size(10);
    for (name, exec) in modes() {
        let cfg = SuiteConfig { exec, dim_cap: 40, ..SuiteConfig::default() };
        group.bench_with_input(BenchmarkId::new(name, "A2 dim<=40"), &cfg, |b, cfg| b.iter(|| black_box(verify::rep("A2".parse().unwrap(), cfg))));
    }
    group.finish();
}

criterion_group!(benches, bench_satake, bench_cocycle, bench_rep);
criterion_main!(benches);
