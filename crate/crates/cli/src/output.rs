//! Tabular output: parallel row evaluation with ordered CSV writing.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde_json::json;

/// Full-precision scientific notation (17 significant digits). Negative
/// zero prints as zero.
pub fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Column `name` parsed back to numbers.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        self.rows.iter().map(|r| r[i].parse().ok()).collect()
    }

    pub fn write_to<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let file =
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        self.write_to(std::io::BufWriter::new(file))
            .with_context(|| format!("writing {}", path.display()))
    }
}

/// Evaluates `row` for every sweep value in parallel and appends the results
/// in sweep order. Rows that fail are left out and reported on stderr as one
/// JSON object per line; the number of skipped rows is returned.
pub fn fill_rows<F>(table: &mut Table, values: &[f64], row: F) -> usize
where
    F: Fn(f64) -> Result<Vec<String>> + Sync,
{
    let results: Vec<Result<Vec<String>>> = values.par_iter().map(|&v| row(v)).collect();
    let mut skipped = 0;
    for (i, (v, r)) in values.iter().zip(results).enumerate() {
        match r {
            Ok(cells) => table.rows.push(cells),
            Err(e) => {
                skipped += 1;
                eprintln!(
                    "{}",
                    json!({"level": "warning", "kind": "row_skipped", "row": i, "value": v, "message": format!("{e:#}")})
                );
            }
        }
    }
    skipped
}
