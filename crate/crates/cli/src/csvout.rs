//! Deterministic CSV emission: fixed header, comma separator, LF endings,
//! floats at 17 significant digits so values round-trip exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use unruh_core::measures::Measure;

pub const CSV_HEADER: &str = "figure,measure,alpha,acceleration,omega,n_max,mode,value";

/// One output row. `acceleration = inf` marks an analytic limit row.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub figure: String,
    pub measure: Measure,
    pub alpha: f64,
    pub acceleration: f64,
    pub omega: f64,
    pub n_max: usize,
    pub mode: &'static str,
    pub value: f64,
}

/// 17 significant digits; enough to reconstruct the exact f64.
pub fn format_float(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.16e}")
}

pub fn render_row(row: &OutputRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        row.figure,
        row.measure,
        format_float(row.alpha),
        format_float(row.acceleration),
        format_float(row.omega),
        row.n_max,
        row.mode,
        format_float(row.value),
    )
}

/// Sorts rows by (alpha, acceleration) and writes the full file. Identical
/// row sets therefore produce identical bytes regardless of evaluation order.
/// Lines are LF-terminated on every platform.
pub fn write_csv(path: &Path, rows: &mut [OutputRow]) -> Result<()> {
    rows.sort_by(|x, y| {
        x.alpha
            .total_cmp(&y.alpha)
            .then(x.acceleration.total_cmp(&y.acceleration))
    });
    let file = File::create(path)
        .with_context(|| format!("cannot write output file {}", path.display()))?;
    let mut w = BufWriter::new(file);
    w.write_all(CSV_HEADER.as_bytes()).context("write failed")?;
    w.write_all(b"\n").context("write failed")?;
    for row in rows.iter() {
        w.write_all(render_row(row).as_bytes())
            .context("write failed")?;
        w.write_all(b"\n").context("write failed")?;
    }
    w.flush().context("flush failed")?;
    Ok(())
}
