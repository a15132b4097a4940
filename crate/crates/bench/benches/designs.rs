use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mmfd_bench::{fixture, rng};
use mmfd_core::evaluation::LinkBudget;
use mmfd_core::{
    design_case_a, design_case_b, evaluate_strategy, gen_clustered_channel, monte_carlo_sweep,
    ClusteredChannelParams, ScenarioConfig, Strategy, StrategyKind,
};

const SIZES: [usize; 2] = [16, 64];

fn channels(c: &mut Criterion) {
    let mut g = c.benchmark_group("clustered_channel");
    let params = ClusteredChannelParams::desired_link();
    for n in SIZES {
        let mut r = rng(1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gen_clustered_channel(&params, n, n, &mut r).unwrap())
        });
    }
    g.finish();
}

fn designs(c: &mut Criterion) {
    let mut g = c.benchmark_group("design");
    for n in SIZES {
        let f = fixture(n);
        let ch = &f.channels;
        let ns = f.config.ns;
        g.bench_with_input(BenchmarkId::new("case_a", n), &n, |b, _| {
            b.iter(|| design_case_a(black_box(&ch.h_ki.h), &ch.h_ij.h, &ch.h_ii.h, ns).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("case_b", n), &n, |b, _| {
            b.iter(|| design_case_b(black_box(&ch.h_ki.h), &ch.h_ij.h, &ch.h_ii.h, ns, 4, &f.codebooks).unwrap())
        });
    }
    g.finish();
}

fn rates(c: &mut Criterion) {
    let f = fixture(16);
    let budget = LinkBudget { snr_desired_db: 0.0, snr_si_db: f.config.snr_si_db };
    let strategy = Strategy::new(StrategyKind::CaseA);
    c.bench_function("evaluate_case_a_16", |b| {
        b.iter(|| {
            evaluate_strategy(strategy, &f.channels, f.config.ns, f.config.nrf, &f.codebooks, &budget, 0, None)
                .unwrap()
        })
    });
}

fn sweep(c: &mut Criterion) {
    let config = ScenarioConfig { trials: 8, threads: 1, ..ScenarioConfig::default() };
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("default_8_trials", |b| b.iter(|| monte_carlo_sweep(&config).unwrap()));
    g.finish();
}

criterion_group!(benches, channels, designs, rates, sweep);
criterion_main!(benches);
