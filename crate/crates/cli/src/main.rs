//! `nearfield`: resolution of a user pair, figure sweeps, regime checks and
//! closed-form timing.
//!
//! Exit status: 0 on success, 1 on usage or validation errors, 2 on I/O errors.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use nearfield::harness::spec::parse_real;
use nearfield::harness::{
    bench, emit_csv, emit_plot_script, parse_spec, preset_with, run_sweep, run_sweep_with_threads,
    BenchConfig, PresetOptions, SweepSpec, PRESET_NAMES,
};
use nearfield::{classify, delta_by, ArrayConfig, Error, Method, UserLocation};

#[derive(Parser)]
#[command(
    name = "nearfield",
    version,
    about = "Near-field beamforming resolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolution of one user pair.
    #[command(allow_negative_numbers = true)]
    Delta(DeltaArgs),
    /// Run a figure preset or a sweep file; writes a CSV and a plot script.
    Sweep(SweepArgs),
    /// Regime report for one user pair.
    #[command(allow_negative_numbers = true)]
    Check(PairArgs),
    /// Median timing of the closed form against the steering-vector oracle.
    Bench(BenchArgs),
}

/// Array and user pair. Lengths in meters, angles in radians (`pi/2` etc.
/// accepted).
#[derive(Args)]
struct PairArgs {
    /// Vertical half-extent (rows are -M..M).
    #[arg(long = "M", default_value_t = 0)]
    m_half: u32,
    /// Horizontal half-extent (columns are -N..N).
    #[arg(long = "N")]
    n_half: u32,
    #[arg(long, default_value_t = 0.01)]
    lambda: f64,
    /// Element spacing; defaults to lambda/2.
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    r1: f64,
    #[arg(long, default_value = "pi/2", value_parser = angle)]
    theta1: f64,
    #[arg(long, default_value = "pi/2", value_parser = angle)]
    phi1: f64,
    #[arg(long)]
    r2: f64,
    #[arg(long, default_value = "pi/2", value_parser = angle)]
    theta2: f64,
    #[arg(long, default_value = "pi/2", value_parser = angle)]
    phi2: f64,
}

#[derive(Args)]
struct DeltaArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Comma-separated: closed_form, closed_form_ula (ula), oracle_fresnel,
    /// oracle_exact, sum_oracle.
    #[arg(long, default_value = "closed_form", value_delimiter = ',')]
    method: Vec<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    preset: Option<String>,
    /// Sweep description file (`key = value` lines).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// CSV path; the plot script is written next to it with a `.py` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Common azimuth of both users (presets only).
    #[arg(long, value_parser = angle, conflicts_with = "spec")]
    theta: Option<f64>,
    /// Common elevation of both users (presets only).
    #[arg(long, value_parser = angle, conflicts_with = "spec")]
    phi: Option<f64>,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Square half-extents M = N to time.
    #[arg(long, default_value = "64,128,256,512", value_delimiter = ',')]
    sizes: Vec<u32>,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

fn angle(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_io() {
            Failure::Io(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn usage(msg: impl Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn pair(args: &PairArgs) -> Result<(ArrayConfig, UserLocation, UserLocation), Failure> {
    let d = args.d.unwrap_or(args.lambda / 2.0);
    let cfg = ArrayConfig::new(args.m_half, args.n_half, d, args.lambda)?;
    let u1 = UserLocation::new(args.r1, args.theta1, args.phi1)?;
    let u2 = UserLocation::new(args.r2, args.theta2, args.phi2)?;
    Ok((cfg, u1, u2))
}

fn run_delta(args: &DeltaArgs) -> Result<(), Failure> {
    let (cfg, u1, u2) = pair(&args.pair)?;
    let methods = args
        .method
        .iter()
        .map(|m| m.trim().parse::<Method>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut warned = false;
    for method in methods {
        let r = delta_by(method, &cfg, &u1, &u2)?;
        println!("{}\t{}", method, r.delta);
        if !warned {
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            warned = true;
        }
    }
    Ok(())
}

fn load_sweep(args: &SweepArgs) -> Result<SweepSpec, Failure> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return Ok(parse_spec(&text)?);
    }
    let name = args
        .preset
        .as_deref()
        .expect("clap requires --preset or --spec");
    if !PRESET_NAMES.contains(&name) {
        return Err(usage(Error::UnknownPreset(name.to_string())));
    }
    let opts = PresetOptions {
        theta: args.theta.unwrap_or(FRAC_PI_2),
        phi: args.phi.unwrap_or(FRAC_PI_2),
    };
    Ok(preset_with(name, opts)?)
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<(), Failure> {
    let spec = load_sweep(args)?;
    let csv = args
        .out
        .clone()
        .or_else(|| spec.output_path.clone())
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", spec.name)));
    let rows = match args.threads {
        Some(t) => run_sweep_with_threads(&spec, t)?,
        None => run_sweep(&spec)?,
    };
    if let Some(dir) = csv.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    emit_csv(&rows, &spec, &csv)?;
    let script = csv.with_extension("py");
    emit_plot_script(&spec, &csv, &script)?;

    let flagged = rows.iter().filter(|r| !r.warnings.is_empty()).count();
    println!("{}", csv.display());
    println!("{}", script.display());
    if flagged > 0 {
        eprintln!("warning: {flagged} of {} rows carry warnings", rows.len());
    }
    Ok(())
}

fn opt(v: Option<impl Display>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| x.to_string())
}

fn run_check(args: &PairArgs) -> Result<(), Failure> {
    let (cfg, u1, u2) = pair(args)?;
    let r = classify(&cfg, &u1, &u2);
    println!("delta                      {}", r.delta);
    println!("classification             {}", r.classification);
    println!("angle_bound                {}", opt(r.remark1_bound));
    println!("common_angles              {}", r.common_angles);
    println!("distance_threshold_m       {}", opt(r.distance_threshold_m));
    println!(
        "degenerate_condition_met   {}",
        opt(r.degenerate_condition_met)
    );
    println!("beta                       {}", r.beta);
    println!("beta_threshold             {}", opt(r.beta_threshold));
    println!(
        "beta_threshold_asymptotic  {}",
        opt(r.beta_threshold_asymptotic)
    );
    println!("threshold_reachable        {}", opt(r.threshold_reachable));
    println!("rayleigh_distance_m        {}", cfg.rayleigh_distance());
    Ok(())
}

fn run_bench(args: &BenchArgs) -> Result<(), Failure> {
    if args.sizes.is_empty() {
        return Err(usage("--sizes needs at least one value"));
    }
    let cfg = BenchConfig {
        sizes: args.sizes.iter().map(|&s| (s, s)).collect(),
        reps: args.reps,
        seed: args.seed,
        ..BenchConfig::default()
    };
    println!("size,closed_form_us,oracle_us,speedup");
    for row in bench(&cfg) {
        println!(
            "{},{:.3},{:.3},{:.1}",
            row.m_half,
            row.closed_form.as_secs_f64() * 1e6,
            row.oracle.as_secs_f64() * 1e6,
            row.speedup()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Delta(a) => run_delta(a),
        Command::Sweep(a) => run_sweep_cmd(a),
        Command::Check(a) => run_check(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
