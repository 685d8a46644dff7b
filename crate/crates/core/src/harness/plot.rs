//! Standalone matplotlib script that renders a sweep CSV.

use std::path::{Component, Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::spec::{Axis, SweepSpec};

fn axis_label(axis: Axis) -> &'static str {
    match axis {
        Axis::Beta => "beta = min(r1, r2) / d_Ray",
        Axis::R1 => "r1 (m)",
        Axis::N => "N (horizontal half-extent)",
        Axis::M => "M (vertical half-extent)",
    }
}

fn absolute(p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        std::env::current_dir().unwrap_or_default().join(p)
    }
}

fn normalize(p: &Path) -> Vec<Component<'_>> {
    let mut out: Vec<Component<'_>> = Vec::new();
    for c in p.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir if matches!(out.last(), Some(Component::Normal(_))) => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// Path of `target` as seen from directory `base`.
pub fn relative_path(target: &Path, base: &Path) -> PathBuf {
    let (t, b) = (absolute(target), absolute(base));
    let (t, b) = (normalize(&t), normalize(&b));
    let common = t.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let mut out = PathBuf::new();
    for _ in common..b.len() {
        out.push("..");
    }
    for c in &t[common..] {
        out.push(c.as_os_str());
    }
    out
}

/// Python literal for a string.
fn py_str(s: &str) -> String {
    let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

pub fn plot_script(spec: &SweepSpec, csv_relative: &Path) -> String {
    let parts: Vec<String> = csv_relative
        .components()
        .map(|c| py_str(&c.as_os_str().to_string_lossy()))
        .collect();
    let xlim = if spec.axis == Axis::Beta {
        "ax.set_xlim(0.0, 1.0)\n"
    } else {
        ""
    };
    format!(
        r#"#!/usr/bin/env python3
# Plots the sweep `{name}`. Requires matplotlib.
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
CSV_PATH = os.path.join(HERE, {csv})
TITLE = {title}
XLABEL = {xlabel}

with open(CSV_PATH, newline="") as fh:
    reader = csv.reader(fh)
    header = next(reader)
    rows = [row for row in reader if row]

x = [float(row[0]) for row in rows]
fig, ax = plt.subplots(figsize=(7, 4.5))
for col, name in enumerate(header[1:-1], start=1):
    y = [float(row[col]) for row in rows]
    style = "-" if name.startswith("closed_form") else "--"
    ax.plot(x, y, style, label=name)
{xlim}ax.set_ylim(-0.02, 1.02)
ax.set_xlabel(XLABEL)
ax.set_ylabel("Delta = |b1^H b2|^2")
ax.set_title(TITLE)
ax.grid(True, alpha=0.3)
ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig(os.path.splitext(CSV_PATH)[0] + ".png", dpi=150)
"#,
        name = spec.name,
        csv = parts.join(", "),
        title = py_str(&spec.name),
        xlabel = py_str(axis_label(spec.axis)),
        xlim = xlim,
    )
}

/// Writes the plot script to `script_path`, referencing `csv_path` relative to
/// the script's directory.
pub fn emit_plot_script(spec: &SweepSpec, csv_path: &Path, script_path: &Path) -> Result<()> {
    if !csv_path.exists() {
        return Err(Error::io(
            csv_path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "CSV not found"),
        ));
    }
    let dir = script_path.parent().unwrap_or(Path::new(""));
    let rel = relative_path(csv_path, dir);
    std::fs::write(script_path, plot_script(spec, &rel)).map_err(|e| Error::io(script_path, e))
}
