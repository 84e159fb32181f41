//! Sequential against rayon-parallel execution on the three data-parallel
//! workloads: a (d, q) bound grid, an f sweep, and explicit construction.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polar_ekr::hoffman::{bound_reports, f_sweep};
use polar_ekr::oracle::{run_oracle, OracleLimits};
use polar_ekr::{Execution, SchemeParams};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bound_grid(c: &mut Criterion) {
    let grid: Vec<SchemeParams> =
        (3..=13).step_by(2).flat_map(|d| [2, 3, 4, 5, 7].map(|q| SchemeParams::new(d, q).unwrap())).collect();
    let mut group = c.benchmark_group("bound_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| bound_reports(&grid, exec)));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let params = SchemeParams::new(9, 3).unwrap();
    let mut group = c.benchmark_group("f_sweep_d9_q3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| f_sweep(params, 200, exec).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let params = SchemeParams::new(3, 2).unwrap();
    let mut group = c.benchmark_group("oracle_h5_4");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_oracle(params, OracleLimits::default(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bound_grid, sweep, oracle);
criterion_main!(benches);
