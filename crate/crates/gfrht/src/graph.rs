//! Directed weighted graphs with validation and spectral-radius scaling.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use ndarray::{Array1, Array2};
use ndarray_linalg::EigVals;
use ndarray_linalg::Scalar as NdScalar;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{Cplx, Scalar};

/// Directed weighted graph: an `n x n` adjacency matrix plus a provenance
/// label. Immutable after construction, so instances can be shared freely
/// across threads.
#[derive(Debug, Clone)]
pub struct Graph<T: Scalar> {
    n: usize,
    adjacency: Array2<T>,
    label: String,
}

impl<T: Scalar> Graph<T> {
    /// Validates and wraps an adjacency matrix. The matrix must be square
    /// with at least two vertices and all entries finite.
    pub fn from_adjacency(adjacency: Array2<T>, label: impl Into<String>) -> Result<Self> {
        let (rows, cols) = adjacency.dim();
        if rows != cols {
            return Err(Error::NonSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::TooSmall { n: rows });
        }
        for ((r, c), w) in adjacency.indexed_iter() {
            if !w.is_finite() {
                return Err(Error::NonFiniteEntry { row: r, col: c });
            }
        }
        Ok(Self {
            n: rows,
            adjacency,
            label: label.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &Array2<T> {
        &self.adjacency
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Adjacency lifted to the complex companion type.
    pub fn adjacency_complex(&self) -> Array2<Cplx<T>> {
        self.adjacency.mapv(|w| w.as_c())
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> Result<T> {
        let vals: Array1<Cplx<T>> = self.adjacency_complex().eigvals()?;
        Ok(vals
            .iter()
            .map(|z| NdScalar::abs(*z))
            .fold(T::zero(), |m, v| if v > m { v } else { m }))
    }

    /// Rescales the adjacency so the spectral radius becomes one.
    ///
    /// A radius that is numerically zero relative to the largest entry (the
    /// zero matrix, nilpotent shifts) cannot be normalized and is rejected.
    pub fn normalize_spectral_radius(&self) -> Result<Self> {
        let rho = self.spectral_radius()?;
        let max_entry = self
            .adjacency
            .iter()
            .map(|w| Float::abs(*w))
            .fold(T::zero(), |m, v| if v > m { v } else { m });
        let floor = T::from_f64(1e-12).unwrap() * Float::max(T::one(), max_entry);
        if rho <= floor {
            return Err(Error::ZeroSpectralRadius);
        }
        let scaled = self.adjacency.mapv(|w| w / rho);
        Self::from_adjacency(scaled, self.label.clone())
    }
}

/// Reads an adjacency matrix from delimited text: one row per line, values
/// separated by commas, `.` decimal separator, exponent notation allowed.
pub fn read_adjacency<T: Scalar>(path: impl AsRef<Path>) -> Result<Graph<T>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row = trimmed
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad value {tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row.into_iter().map(|v| T::from_f64(v).unwrap()).collect());
    }
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse {
            line: 0,
            message: "rows have inconsistent lengths".into(),
        });
    }
    let flat: Vec<T> = rows.into_iter().flatten().collect();
    let adjacency =
        Array2::from_shape_vec((n, cols), flat).map_err(|e| Error::Backend(e.to_string()))?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    Graph::from_adjacency(adjacency, label)
}

/// Writes an adjacency matrix as comma-delimited text, one row per line.
pub fn write_adjacency<T: Scalar>(graph: &Graph<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    for row in graph.adjacency().rows() {
        let line: Vec<String> = row.iter().map(|w| format!("{w}")).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
