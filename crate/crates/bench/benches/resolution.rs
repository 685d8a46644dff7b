//! Closed form against the steering-vector and direct-sum oracles.
//!
//! ```bash
//! cargo bench -p nearfield-bench
//! cargo bench -p nearfield-bench -- closed_form
//! ```

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nearfield::{
    delta_closed_form, delta_oracle, delta_sum_oracle, delta_ula, pair_params, ArrayConfig,
    PhaseModel, UserLocation,
};
use nearfield_bench::{fixture, SIZES, WAVELENGTH};

fn closed_form_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution");
    group.measurement_time(Duration::from_secs(3));
    for size in SIZES {
        let (cfg, u1, u2) = fixture(size);
        group.bench_with_input(BenchmarkId::new("closed_form", size), &cfg, |b, cfg| {
            b.iter(|| delta_closed_form(black_box(cfg), black_box(&u1), black_box(&u2)))
        });
        // The oracles are quadratic in the array side; keep the sample small.
        group.sample_size(10);
        group.bench_with_input(BenchmarkId::new("oracle_fresnel", size), &cfg, |b, cfg| {
            b.iter(|| {
                delta_oracle(
                    black_box(cfg),
                    black_box(&u1),
                    black_box(&u2),
                    PhaseModel::Fresnel,
                )
            })
        });
        let params = pair_params(&cfg, &u1, &u2);
        group.bench_with_input(BenchmarkId::new("sum_oracle", size), &params, |b, p| {
            b.iter(|| delta_sum_oracle(black_box(p), size, size))
        });
        group.sample_size(100);
    }
    group.finish();
}

fn linear_array(c: &mut Criterion) {
    let mut group = c.benchmark_group("linear_array");
    let h = std::f64::consts::FRAC_PI_2;
    let u1 = UserLocation::new(5.0, h, h).unwrap();
    let u2 = UserLocation::new(10.0, h, h).unwrap();
    for n in [128u32, 1024, 8192] {
        let cfg = ArrayConfig::half_wavelength(0, n, WAVELENGTH).unwrap();
        group.bench_with_input(BenchmarkId::new("ula", n), &cfg, |b, cfg| {
            b.iter(|| delta_ula(black_box(cfg), black_box(&u1), black_box(&u2)))
        });
    }
    group.finish();
}

criterion_group!(benches, closed_form_vs_oracle, linear_array);
criterion_main!(benches);
