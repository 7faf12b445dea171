//! Parallel vs sequential throughput of the data-parallel hot spots.
//!
//! With the default `parallel` feature each workload runs on rayon's global
//! pool and on a one-thread pool. Built with `--no-default-features`, the
//! same workloads run through the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rainbow_core::forest::{greedy_rainbow_forest, swap_minimize, PathForest, SearchBudget};
use rainbow_core::gen::{random_proper, round_robin_even, GeneratorKind};
use rainbow_core::harness::{sweep, Algorithm, SweepConfig};
use rainbow_core::oracle::{brute_longest_rainbow_cycle, swap_closure};
use rainbow_core::sampler::{adversarial_pair_scan, sample_color_subgraph, SampleParams};

type Workload = Box<dyn Fn() + Send + Sync>;

fn workloads() -> Vec<(&'static str, Workload)> {
    let mut config = SweepConfig::single(GeneratorKind::RoundRobinEven, 256, 0, Algorithm::Cycle);
    config.seeds = (0..4).collect();

    let host = round_robin_even(300).unwrap();
    let params = SampleParams::new(0.2, 0.15, 1).unwrap();
    let sampled = sample_color_subgraph(&host, &params);

    let k8 = random_proper(8, 0, 3).unwrap();
    let k7 = random_proper(7, 1, 5).unwrap();
    let singletons = PathForest::singletons(&k7);

    let k64 = round_robin_even(64).unwrap();
    let start = greedy_rainbow_forest(&k64, 0.125, 0.125).forest;

    vec![
        ("cycle_sweep_n256x4", Box::new(move || drop(sweep(&config)))),
        (
            "pair_scan_k300_2000",
            Box::new(move || drop(adversarial_pair_scan(&sampled, &host, 42, 100, &params, 2000, 9).unwrap())),
        ),
        ("brute_cycle_k8", Box::new(move || drop(brute_longest_rainbow_cycle(&k8).unwrap()))),
        ("swap_closure_k7", Box::new(move || drop(swap_closure(singletons.paths(), &k7, 2_000_000)))),
        (
            "swap_minimize_k64",
            Box::new(move || drop(swap_minimize(&start, &k64, SearchBudget::bounded(2000, 6, usize::MAX, 1)))),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn modes() -> Vec<(&'static str, Option<rayon::ThreadPool>)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    vec![("rayon_default", None), ("rayon_1_thread", Some(single))]
}

#[cfg(not(feature = "parallel"))]
fn modes() -> Vec<(&'static str, Option<()>)> {
    vec![("sequential", None)]
}

fn bench(c: &mut Criterion) {
    let modes = modes();
    for (name, work) in workloads() {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        for (mode, pool) in &modes {
            group.bench_function(BenchmarkId::from_parameter(mode), |b| {
                b.iter(|| match pool {
                    #[cfg(feature = "parallel")]
                    Some(pool) => pool.install(&work),
                    _ => work(),
                })
            });
        }
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
