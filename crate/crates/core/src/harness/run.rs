use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::spec::SweepSpec;
use crate::resolution::delta_by;

/// One line of sweep output: the axis value and one delta per column of
/// [`SweepSpec::columns`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub deltas: Vec<f64>,
    /// Sorted, de-duplicated warning tags; prefixed `label:` for labeled series.
    pub warnings: Vec<String>,
}

/// Runs on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.axis_values
        .par_iter()
        .map(|&v| evaluate_row(spec, v))
        .collect()
}

/// Runs on a dedicated pool of `threads` workers. Output is identical for
/// every thread count.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidSweep(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

fn evaluate_row(spec: &SweepSpec, value: f64) -> Result<SweepRow> {
    let series = spec.effective_series();
    let labeled = !spec.series.is_empty();
    let mut deltas = Vec::with_capacity(series.len() * spec.methods.len());
    let mut warnings = Vec::new();
    for s in &series {
        let p = spec.point(s, value)?;
        for &method in &spec.methods {
            let r = delta_by(method, &p.config, &p.user1, &p.user2)?;
            deltas.push(r.delta);
            for w in r.warnings {
                warnings.push(if labeled {
                    format!("{}:{}", s.label, w.tag())
                } else {
                    w.tag().to_string()
                });
            }
        }
    }
    warnings.sort();
    warnings.dedup();
    Ok(SweepRow {
        axis_value: value,
        deltas,
        warnings,
    })
}
