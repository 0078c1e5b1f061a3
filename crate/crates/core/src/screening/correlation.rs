use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{TimeSeriesTable, VariableCatalog};
use crate::par;

/// Pairs at or above this coefficient are kept by default.
pub const DEFAULT_THRESHOLD: f64 = 0.7;

/// Sample Pearson correlation. `Ok(None)` when either series has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)))
}

/// Symmetric matrix of pairwise coefficients; `None` marks undefined entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    catalog: VariableCatalog,
    /// Row-major, `n * n`.
    r: Vec<Option<f64>>,
}

impl CorrelationMatrix {
    /// Builds a matrix from full rows (used by tests and file readers).
    pub fn from_rows(catalog: VariableCatalog, rows: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let n = catalog.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        Ok(Self {
            catalog,
            r: rows.into_iter().flatten().collect(),
        })
    }

    pub fn catalog(&self) -> &VariableCatalog {
        &self.catalog
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    /// Coefficient between variables `i` and `j` (1-based ids).
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.r[(i - 1) * self.len() + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Option<f64>>> {
        let n = self.len();
        (0..n)
            .map(|i| self.r[i * n..(i + 1) * n].to_vec())
            .collect()
    }
}

/// All pairwise coefficients of the table's columns.
///
/// Upper-triangle entries are computed independently (in parallel when the
/// `parallel` feature is on) and mirrored, so the result is bit-identical
/// across schedules.
pub fn correlation_matrix(table: &TimeSeriesTable) -> Result<CorrelationMatrix> {
    let n = table.n_vars();
    let columns: Vec<Vec<f64>> = (1..=n).map(|id| table.column(id)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let coefs = par::map_slice(&pairs, |&(i, j)| {
        if i == j {
            pearson(&columns[i], &columns[i]).map(|r| r.map(|_| 1.0))
        } else {
            pearson(&columns[i], &columns[j])
        }
    });
    let mut r = vec![None; n * n];
    for (&(i, j), c) in pairs.iter().zip(coefs) {
        let c = c?;
        r[i * n + j] = c;
        r[j * n + i] = c;
    }
    Ok(CorrelationMatrix {
        catalog: table.catalog().clone(),
        r,
    })
}

/// A screened pair `i < j` with its coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidatePair {
    pub i: usize,
    pub j: usize,
    pub r: f64,
}

/// Pairs with `r >= threshold` (or `|r| >= threshold` when `absolute`),
/// sorted by `(i, j)`. Undefined coefficients are never selected.
pub fn select_pairs(
    m: &CorrelationMatrix,
    threshold: f64,
    absolute: bool,
) -> Result<Vec<CandidatePair>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let n = m.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if let Some(r) = m.get(i, j) {
                let score = if absolute { r.abs() } else { r };
                if score >= threshold {
                    out.push(CandidatePair { i, j, r });
                }
            }
        }
    }
    Ok(out)
}
