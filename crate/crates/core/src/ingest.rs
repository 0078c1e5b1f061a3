//! Variable catalog and the monthly time-series panel.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// One catalogued variable. Ids are 1-based and consecutive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Variable {
    pub id: usize,
    pub name: String,
}

/// Ordered list of named variables with ids `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct VariableCatalog {
    entries: Vec<Variable>,
}

impl VariableCatalog {
    /// Builds a catalog from names; ids are assigned in order starting at 1.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let entries: Vec<Variable> = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| Variable {
                id: i + 1,
                name: name.into(),
            })
            .collect();
        let mut seen = HashSet::new();
        for v in &entries {
            if v.name.trim().is_empty() {
                return Err(Error::Catalog(format!(
                    "variable {} has an empty name",
                    v.id
                )));
            }
            if !seen.insert(v.name.to_lowercase()) {
                return Err(Error::Catalog(format!(
                    "duplicate variable name {:?}",
                    v.name
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Variable] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|v| v.id)
    }

    pub fn contains(&self, id: usize) -> bool {
        id >= 1 && id <= self.entries.len()
    }

    pub fn name(&self, id: usize) -> Option<&str> {
        id.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|v| v.name.as_str())
    }

    /// Case-insensitive lookup of a variable by name.
    pub fn find(&self, name: &str) -> Option<usize> {
        let needle = name.trim().to_lowercase();
        self.entries
            .iter()
            .find(|v| v.name.to_lowercase() == needle)
            .map(|v| v.id)
    }
}

/// The fourteen accommodation types of the Spanish overnight-stays panel,
/// numbered as in the reference causal graph.
pub fn builtin_catalog() -> VariableCatalog {
    VariableCatalog::from_names([
        "Five-gold-star hotels",
        "four-gold-star hotels",
        "three-gold-star hotels",
        "two-gold-star hotels",
        "one-gold-star hotels",
        "three- and two-silver-star hotels",
        "one-silver-star hotels",
        "luxury and first class Campsites",
        "second class Campsites",
        "third class Campsites",
        "all hotel establishments",
        "Total Campsites",
        "tourist apartments",
        "rural tourism accommodation establishments",
    ])
    .expect("builtin catalog is well-formed")
}

/// Calendar month, written `YYYY-MM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    pub year: i32,
    pub month: u8,
}

impl Period {
    pub fn new(year: i32, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(Self { year, month })
    }

    /// The month after this one.
    pub fn succ(self) -> Self {
        if self.month == 12 {
            Self {
                year: self.year + 1,
                month: 1,
            }
        } else {
            Self {
                year: self.year,
                month: self.month + 1,
            }
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for Period {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (y, m) = s
            .split_once('-')
            .ok_or_else(|| format!("period {s:?} is not YYYY-MM"))?;
        if y.len() != 4 || m.len() != 2 {
            return Err(format!("period {s:?} is not YYYY-MM"));
        }
        let year: i32 = y.parse().map_err(|_| format!("bad year in period {s:?}"))?;
        let month: u8 = m
            .parse()
            .map_err(|_| format!("bad month in period {s:?}"))?;
        Period::new(year, month).ok_or_else(|| format!("month out of range in period {s:?}"))
    }
}

impl Serialize for Period {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Months x variables matrix of non-negative counts.
///
/// Tables produced by [`load_table`] or [`TimeSeriesTable::new`] always pass
/// [`validate`]. [`TimeSeriesTable::new_unchecked`] exists so that invalid
/// tables can be constructed and inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesTable {
    catalog: VariableCatalog,
    periods: Vec<Period>,
    /// Row-major, `periods.len() * catalog.len()`.
    values: Vec<f64>,
}

impl TimeSeriesTable {
    /// Builds a table from rows and rejects it if any invariant fails.
    pub fn new(
        catalog: VariableCatalog,
        periods: Vec<Period>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let table = Self::new_unchecked(catalog, periods, rows);
        let violations = validate(&table);
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Builds a table without checking invariants. Ragged rows are padded
    /// with NaN (and will then be reported by [`validate`]).
    pub fn new_unchecked(
        catalog: VariableCatalog,
        periods: Vec<Period>,
        rows: Vec<Vec<f64>>,
    ) -> Self {
        let n = catalog.len();
        let mut values = Vec::with_capacity(rows.len() * n);
        for row in &rows {
            values.extend((0..n).map(|j| row.get(j).copied().unwrap_or(f64::NAN)));
        }
        // A row-count mismatch is kept visible to validate() through the
        // periods/values lengths.
        Self {
            catalog,
            periods,
            values,
        }
    }

    pub fn catalog(&self) -> &VariableCatalog {
        &self.catalog
    }

    pub fn periods(&self) -> &[Period] {
        &self.periods
    }

    pub fn n_periods(&self) -> usize {
        self.periods.len()
    }

    pub fn n_vars(&self) -> usize {
        self.catalog.len()
    }

    /// Value at (period index, variable id).
    pub fn value(&self, row: usize, id: usize) -> f64 {
        self.values[row * self.n_vars() + (id - 1)]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.n_vars();
        &self.values[row * n..(row + 1) * n]
    }

    /// Column of variable `id` as an owned series.
    pub fn column(&self, id: usize) -> Vec<f64> {
        let n = self.n_vars();
        let rows = self.values.len() / n.max(1);
        (0..rows).map(|t| self.values[t * n + (id - 1)]).collect()
    }

    /// Writes the table in the wide CSV format accepted by [`load_table`].
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| Error::Parse {
            line: 0,
            message: e.to_string(),
        };
        let mut header = vec!["period".to_string()];
        header.extend(self.catalog.entries().iter().map(|v| v.name.clone()));
        w.write_record(&header).map_err(io_err)?;
        for (t, p) in self.periods.iter().enumerate() {
            let mut rec = vec![p.to_string()];
            rec.extend(self.row(t).iter().map(|v| v.to_string()));
            w.write_record(&rec).map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn to_csv_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        buf
    }
}

/// Lists every invariant violation of `table`; empty iff the table is valid.
pub fn validate(table: &TimeSeriesTable) -> Vec<String> {
    let mut out = Vec::new();
    let n = table.n_vars();
    if table.periods.is_empty() {
        out.push("empty table".to_string());
    }
    if table.values.len() != table.periods.len() * n {
        out.push(format!(
            "matrix has {} cells, expected {} periods x {} variables",
            table.values.len(),
            table.periods.len(),
            n
        ));
        return out;
    }
    for w in table.periods.windows(2) {
        if w[1] == w[0] {
            out.push(format!("duplicated period {}", w[1]));
        } else if w[1] < w[0] {
            out.push(format!(
                "period {} follows {} (periods must be increasing)",
                w[1], w[0]
            ));
        }
    }
    for (t, p) in table.periods.iter().enumerate() {
        for v in table.catalog.entries() {
            let x = table.values[t * n + v.id - 1];
            if !x.is_finite() {
                out.push(format!(
                    "non-finite value at period {p}, variable {:?}",
                    v.name
                ));
            } else if x < 0.0 {
                out.push(format!(
                    "negative value {x} at period {p}, variable {:?}",
                    v.name
                ));
            }
        }
    }
    out
}

/// Parses the wide CSV format: a `period` column with `YYYY-MM` values plus
/// one column per catalog variable, matched by name case-insensitively in any
/// order. Columns are stored in catalog order.
pub fn load_table<R: Read>(source: R, catalog: &VariableCatalog) -> Result<TimeSeriesTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();

    let mut fields = header.iter();
    match fields.next() {
        Some(h)
            if h.trim_start_matches('\u{feff}')
                .eq_ignore_ascii_case("period") => {}
        other => {
            return Err(Error::Header(format!(
                "first column must be `period`, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    // column position in file -> variable id
    let mut binding = Vec::with_capacity(catalog.len());
    let mut bound = vec![false; catalog.len()];
    for name in fields {
        let id = catalog
            .find(name)
            .ok_or_else(|| Error::Header(format!("unknown variable column {name:?}")))?;
        if std::mem::replace(&mut bound[id - 1], true) {
            return Err(Error::Header(format!(
                "variable column {name:?} appears twice"
            )));
        }
        binding.push(id);
    }
    let missing: Vec<&str> = catalog
        .entries()
        .iter()
        .filter(|v| !bound[v.id - 1])
        .map(|v| v.name.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Header(format!(
            "missing variable columns: {}",
            missing.join(", ")
        )));
    }

    let mut periods = Vec::new();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        if rec.len() != binding.len() + 1 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} cells, found {}", binding.len() + 1, rec.len()),
            });
        }
        let period: Period = rec[0]
            .parse()
            .map_err(|message| Error::Parse { line, message })?;
        let mut row = vec![0.0; catalog.len()];
        for (cell, &id) in rec.iter().skip(1).zip(&binding) {
            if cell.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!("missing value for {:?}", catalog.name(id).unwrap_or("")),
                });
            }
            row[id - 1] = cell.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("cannot parse {cell:?} as a number"),
            })?;
        }
        periods.push(period);
        rows.push(row);
    }
    TimeSeriesTable::new(catalog.clone(), periods, rows)
}
