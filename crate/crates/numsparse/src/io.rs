//! File formats: signals and matrices as CSV, measurement batches as a CSV
//! column with a JSON sidecar, and JSON summaries.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::Matrix;
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::sparsity::Signal;
use crate::stable::{MeasurementBatch, Mode};

/// Reads a signal stored one value per line, no header.
pub fn read_signal_csv(path: &Path) -> Result<Signal> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        values.push(
            line.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    if values.is_empty() {
        return Err(Error::Parse(format!("{}: no values", path.display())));
    }
    Ok(Signal::new(values))
}

pub fn write_signal_csv(path: &Path, x: &Signal) -> Result<()> {
    let mut out = String::new();
    for v in &x.values {
        out.push_str(&format!("{v}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a matrix stored one comma-separated row per line.
pub fn read_matrix_csv(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "{}:{}: ragged row ({} vs {} columns)",
                    path.display(),
                    i + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse(format!("{}: no rows", path.display())));
    }
    let (n, p) = (rows.len(), rows[0].len());
    Ok(Matrix::new(n, p, rows.into_iter().flatten().collect()))
}

#[derive(Debug, Serialize, Deserialize)]
struct BatchSidecar {
    q: f64,
    gamma: f64,
    sigma: f64,
    noise: NoiseModel,
    mode: Mode,
    seed: u64,
    n: usize,
}

fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes a batch as `<path>` (CSV, header `y`) plus a `.json` sidecar with
/// the batch parameters.
pub fn write_batch(csv_path: &Path, batch: &MeasurementBatch) -> Result<()> {
    let mut out = String::from("y\n");
    for v in &batch.y {
        out.push_str(&format!("{v}\n"));
    }
    fs::write(csv_path, out)?;
    let sidecar = BatchSidecar {
        q: batch.q,
        gamma: batch.gamma_q,
        sigma: batch.sigma,
        noise: batch.noise,
        mode: batch.mode,
        seed: batch.seed,
        n: batch.n(),
    };
    fs::write(
        sidecar_path(csv_path),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(())
}

/// Reads a batch written by `write_batch`.
pub fn read_batch(csv_path: &Path) -> Result<MeasurementBatch> {
    let text = fs::read_to_string(csv_path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some("y") => {}
        _ => {
            return Err(Error::Parse(format!(
                "{}: expected header `y`",
                csv_path.display()
            )))
        }
    }
    let mut y = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        y.push(
            line.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", csv_path.display(), i + 2)))?,
        );
    }
    let sidecar: BatchSidecar =
        serde_json::from_str(&fs::read_to_string(sidecar_path(csv_path))?)?;
    if sidecar.n != y.len() {
        return Err(Error::Parse(format!(
            "{}: sidecar says n={}, file has {} values",
            csv_path.display(),
            sidecar.n,
            y.len()
        )));
    }
    Ok(MeasurementBatch {
        q: sidecar.q,
        gamma_q: sidecar.gamma,
        sigma: sidecar.sigma,
        y,
        mode: sidecar.mode,
        seed: sidecar.seed,
        noise: sidecar.noise,
    })
}

/// Serializes a value as pretty JSON to a file.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}
