use super::sig6;
use crate::error::{Error, Result};
use crate::ingest::VariableCatalog;

/// How a matrix cell is written to CSV.
pub trait CsvCell {
    fn cell(&self) -> String;
}

impl CsvCell for bool {
    fn cell(&self) -> String {
        if *self { "1" } else { "0" }.to_string()
    }
}

impl CsvCell for f64 {
    fn cell(&self) -> String {
        sig6(*self).to_string()
    }
}

/// Undefined entries are written as `NA`.
impl CsvCell for Option<f64> {
    fn cell(&self) -> String {
        self.map_or_else(|| "NA".to_string(), |x| x.cell())
    }
}

/// Square matrix over the catalog with a header row and a leading name column.
pub fn matrix_csv<T: CsvCell>(m: &[Vec<T>], catalog: &VariableCatalog) -> Result<Vec<u8>> {
    let n = catalog.len();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            rows: m.len(),
            cols: m.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n),
        });
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let names = catalog.entries().iter().map(|v| v.name.as_str());
    let csv_err = |e: csv::Error| Error::Parse {
        line: 0,
        message: e.to_string(),
    };
    w.write_record(std::iter::once("variable").chain(names.clone()))
        .map_err(csv_err)?;
    for (name, row) in names.zip(m) {
        let cells: Vec<String> = row.iter().map(CsvCell::cell).collect();
        w.write_record(std::iter::once(name.to_string()).chain(cells))
            .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

/// Parses a 0/1 matrix written by [`matrix_csv`]; returns names and rows.
pub fn parse_bool_matrix_csv(bytes: &[u8]) -> Result<(Vec<String>, Vec<Vec<bool>>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(bytes);
    let header = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let row = rec
            .iter()
            .skip(1)
            .map(|c| match c {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse {
                    line,
                    message: format!("expected 0 or 1, found {other:?}"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        rows.push(row);
    }
    Ok((names, rows))
}
