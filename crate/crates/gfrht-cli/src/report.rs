//! Report serialization and small output helpers.
//!
//! Every run writes one `report.json` containing the resolved config, the
//! seed, and an FNV-1a hash of the raw config file, so any reported number
//! can be traced back to exactly one `(config, seed)` pair. CSV output uses
//! `,` separators, `.` decimals, a header row, and LF line endings; node
//! columns carry 1-based labels.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// FNV-1a 64-bit hash (provenance fingerprint for config bytes).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub kind: String,
    pub seed: u64,
    pub config_hash: String,
}

impl Provenance {
    pub fn new(kind: &str, seed: u64, config_bytes: &[u8]) -> Self {
        Self {
            kind: kind.to_string(),
            seed,
            config_hash: format!("{:016x}", fnv1a64(config_bytes)),
        }
    }
}

/// Wraps a kind-specific result together with its provenance and the
/// resolved configuration echo.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<C: Serialize, R: Serialize> {
    pub provenance: Provenance,
    pub config: C,
    pub results: R,
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Writes a CSV file from a header and pre-formatted rows.
pub fn write_csv<I>(path: impl AsRef<Path>, header: &str, rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Shortest-roundtrip decimal formatting (deterministic for a given value).
pub fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Debug export of a complex matrix: one row per line with `re+imj` cells.
pub fn write_complex_matrix_csv(
    path: impl AsRef<Path>,
    m: &ndarray::Array2<num_complex::Complex64>,
) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|z| format!("{}{:+}j", z.re, z.im)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
