//! Figure presets, parameter sweeps, CSV and plot-script output, and the
//! closed-form vs oracle timing harness.

pub mod bench;
pub mod csv;
pub mod plot;
pub mod run;
pub mod spec;

pub use bench::{bench, random_pair, BenchConfig, BenchRow};
pub use csv::{csv_string, emit_csv};
pub use plot::{emit_plot_script, plot_script};
pub use run::{run_sweep, run_sweep_with_threads, SweepRow};
pub use spec::{
    linspace, parse_spec, preset, preset_with, Axis, GridPoint, PresetOptions, SecondRange, Series,
    SweepSpec, PRESET_NAMES,
};
