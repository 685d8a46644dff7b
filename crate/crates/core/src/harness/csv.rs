//! CSV layout: header `axis,<column>...,warnings`, one line per row, LF line
//! endings, floats in shortest round-trip decimal, warnings joined by `;`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::run::SweepRow;
use crate::harness::spec::SweepSpec;

pub fn csv_string(rows: &[SweepRow], spec: &SweepSpec) -> String {
    let mut out = String::from("axis");
    for c in spec.columns() {
        out.push(',');
        out.push_str(&c);
    }
    out.push_str(",warnings\n");
    for row in rows {
        // f64 Display is the shortest string that parses back to the same value.
        write!(out, "{}", row.axis_value).unwrap();
        for d in &row.deltas {
            write!(out, ",{d}").unwrap();
        }
        out.push(',');
        out.push_str(&row.warnings.join(";"));
        out.push('\n');
    }
    out
}

pub fn emit_csv(rows: &[SweepRow], spec: &SweepSpec, path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidSweep("no rows to write".into()));
    }
    std::fs::write(path, csv_string(rows, spec)).map_err(|e| Error::io(path, e))
}
