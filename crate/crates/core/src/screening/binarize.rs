use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{Period, TimeSeriesTable, VariableCatalog};

/// How a numeric series is turned into per-month boolean events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinarizeRule {
    /// Strictly above the variable's sample median.
    #[default]
    AboveMedian,
    /// Strictly above the variable's mean.
    AboveMean,
    /// Increase over the previous month; the first month is dropped.
    PositiveDiff,
}

impl BinarizeRule {
    fn min_periods(self) -> usize {
        match self {
            BinarizeRule::AboveMedian | BinarizeRule::AboveMean => 1,
            BinarizeRule::PositiveDiff => 2,
        }
    }
}

impl fmt::Display for BinarizeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinarizeRule::AboveMedian => "median",
            BinarizeRule::AboveMean => "mean",
            BinarizeRule::PositiveDiff => "diff",
        })
    }
}

impl FromStr for BinarizeRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "median" | "above-median" => Ok(Self::AboveMedian),
            "mean" | "above-mean" => Ok(Self::AboveMean),
            "diff" | "positive-diff" => Ok(Self::PositiveDiff),
            _ => Err(format!(
                "unknown binarization rule {s:?} (expected median, mean or diff)"
            )),
        }
    }
}

/// Boolean events per (period, variable).
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryEventTable {
    catalog: VariableCatalog,
    periods: Vec<Period>,
    /// Column-major: `events[id - 1][t]`.
    events: Vec<Vec<bool>>,
}

impl BinaryEventTable {
    /// Builds a table directly from event columns, one per catalog variable.
    pub fn from_columns(
        catalog: VariableCatalog,
        periods: Vec<Period>,
        columns: Vec<Vec<bool>>,
    ) -> Result<Self> {
        if columns.len() != catalog.len() || columns.iter().any(|c| c.len() != periods.len()) {
            return Err(Error::DimensionMismatch {
                expected: catalog.len(),
                rows: periods.len(),
                cols: columns.len(),
            });
        }
        Ok(Self {
            catalog,
            periods,
            events: columns,
        })
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

    pub fn column(&self, id: usize) -> Result<&[bool]> {
        id.checked_sub(1)
            .and_then(|i| self.events.get(i))
            .map(Vec::as_slice)
            .ok_or(Error::UnknownVariable(id))
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn events_for(series: &[f64], rule: BinarizeRule) -> Vec<bool> {
    match rule {
        BinarizeRule::AboveMedian => {
            let m = median(series);
            series.iter().map(|&x| x > m).collect()
        }
        BinarizeRule::AboveMean => {
            let m = series.iter().sum::<f64>() / series.len() as f64;
            series.iter().map(|&x| x > m).collect()
        }
        BinarizeRule::PositiveDiff => series.windows(2).map(|w| w[1] > w[0]).collect(),
    }
}

/// Converts every column of `table` into boolean events under `rule`.
pub fn binarize(table: &TimeSeriesTable, rule: BinarizeRule) -> Result<BinaryEventTable> {
    let n = table.n_periods();
    if n < rule.min_periods() {
        return Err(Error::TooShort {
            needed: rule.min_periods(),
            got: n,
        });
    }
    let events = table
        .catalog()
        .ids()
        .map(|id| events_for(&table.column(id), rule))
        .collect();
    let periods = match rule {
        BinarizeRule::PositiveDiff => table.periods()[1..].to_vec(),
        _ => table.periods().to_vec(),
    };
    Ok(BinaryEventTable {
        catalog: table.catalog().clone(),
        periods,
        events,
    })
}
