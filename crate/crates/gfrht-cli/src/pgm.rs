//! Plain-text (P2) PGM reading and writing.

use std::io::Write;
use std::path::Path;

use ndarray::Array2;

use crate::error::{HarnessError, Result};

/// Reads a plain PGM (magic `P2`). Returns raw intensities; `#` comments
/// and arbitrary whitespace are accepted as the format allows.
pub fn read_pgm(path: impl AsRef<Path>) -> Result<Array2<f64>> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .map(str::to_owned)
        .collect::<Vec<_>>()
        .into_iter();

    let magic = tokens
        .next()
        .ok_or_else(|| HarnessError::BadImage("empty file".into()))?;
    if magic != "P2" {
        return Err(HarnessError::BadImage(format!(
            "expected plain PGM magic P2, got {magic:?}"
        )));
    }
    let mut next_usize = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| HarnessError::BadImage(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| HarnessError::BadImage(format!("bad {what}: {e}")))
    };
    let width = next_usize("width")?;
    let height = next_usize("height")?;
    let maxval = next_usize("maxval")?;
    if maxval == 0 {
        return Err(HarnessError::BadImage("maxval must be positive".into()));
    }
    let mut data = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        data.push(next_usize("pixel")? as f64);
    }
    Array2::from_shape_vec((height, width), data).map_err(|e| HarnessError::BadImage(e.to_string()))
}

/// Writes values in `[0, 1]` as an 8-bit plain PGM.
pub fn write_pgm(path: impl AsRef<Path>, img: &Array2<f64>) -> Result<()> {
    let (rows, cols) = img.dim();
    let mut out = String::new();
    out.push_str(&format!("P2\n{cols} {rows}\n255\n"));
    for row in img.rows() {
        let line: Vec<String> = row
            .iter()
            .map(|&v| {
                let q = (v * 255.0).round().clamp(0.0, 255.0) as u8;
                q.to_string()
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}
