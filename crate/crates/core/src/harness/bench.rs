//! Median wall-clock timing of the closed form against the steering-vector
//! oracle.

use std::f64::consts::PI;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ArrayConfig, PhaseModel, UserLocation};
use crate::resolution::{delta_closed_form, delta_oracle};

pub const MIN_REPS: usize = 20;
const ANGLE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// `(M, N)` pairs.
    pub sizes: Vec<(u32, u32)>,
    /// Repetitions per method and size; raised to [`MIN_REPS`] if lower.
    pub reps: usize,
    /// Closed-form calls per timed repetition, to lift them above timer noise.
    pub closed_form_batch: usize,
    pub seed: u64,
    pub wavelength: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: [64, 128, 256, 512].into_iter().map(|s| (s, s)).collect(),
            reps: MIN_REPS,
            closed_form_batch: 50,
            seed: 7,
            wavelength: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m_half: u32,
    pub n_half: u32,
    /// Median time of one closed-form evaluation.
    pub closed_form: Duration,
    /// Median time of one oracle evaluation (two steering vectors and their
    /// inner product).
    pub oracle: Duration,
}

impl BenchRow {
    /// Oracle time over closed-form time.
    pub fn speedup(&self) -> f64 {
        self.oracle.as_secs_f64() / self.closed_form.as_secs_f64().max(1e-12)
    }
}

/// User pair drawn from `seed`: ranges in [0.5, 20] m, angles in
/// (0.05, pi - 0.05). Independent of array size.
pub fn random_pair(seed: u64) -> (UserLocation, UserLocation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let r = rng.random_range(0.5..=20.0);
        let theta = rng.random_range(ANGLE_MARGIN..PI - ANGLE_MARGIN);
        let phi = rng.random_range(ANGLE_MARGIN..PI - ANGLE_MARGIN);
        UserLocation::new(r, theta, phi).expect("drawn inside the valid domain")
    };
    (draw(), draw())
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

pub fn bench(cfg: &BenchConfig) -> Vec<BenchRow> {
    let (u1, u2) = random_pair(cfg.seed);
    let reps = cfg.reps.max(MIN_REPS);
    let batch = cfg.closed_form_batch.max(1);
    cfg.sizes
        .iter()
        .map(|&(m, n)| {
            let array = ArrayConfig::half_wavelength(m, n, cfg.wavelength)
                .expect("bench wavelength is positive");
            // warm-up
            black_box(delta_closed_form(&array, &u1, &u2));
            black_box(delta_oracle(&array, &u1, &u2, PhaseModel::Fresnel));

            let closed = (0..reps)
                .map(|_| {
                    let start = Instant::now();
                    for _ in 0..batch {
                        black_box(delta_closed_form(
                            black_box(&array),
                            black_box(&u1),
                            black_box(&u2),
                        ));
                    }
                    start.elapsed() / batch as u32
                })
                .collect();
            let oracle = (0..reps)
                .map(|_| {
                    let start = Instant::now();
                    black_box(delta_oracle(
                        black_box(&array),
                        black_box(&u1),
                        black_box(&u2),
                        PhaseModel::Fresnel,
                    ));
                    start.elapsed()
                })
                .collect();
            BenchRow {
                m_half: m,
                n_half: n,
                closed_form: median(closed),
                oracle: median(oracle),
            }
        })
        .collect()
}
