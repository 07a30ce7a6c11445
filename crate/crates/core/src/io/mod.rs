//! Readers for the CSV and JSON inputs.
//!
//! Every CSV reader expects a header row, `,` separators and `.` decimals.
//! Errors carry the 1-based line number and the offending column.

mod dataset;
mod hypothesis;
mod records;

use std::fs::File;
use std::path::Path;

pub use dataset::{parse_dataset, read_dataset, Dataset, DatasetRow};
pub use hypothesis::{parse_hypothesis, HypothesisDocument};
pub use records::{
    load_logs, load_scales, load_sightings, load_travel, parse_logs, parse_scales, parse_sightings, parse_travel,
    read_logs, read_scales, read_sightings, read_travel,
};

use crate::error::{Error, Result};

pub(crate) fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::parse(0, path.display().to_string(), e.to_string()))
}

pub(crate) fn csv_reader<R: std::io::Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

pub(crate) fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Column positions looked up by header name.
pub(crate) struct Columns {
    names: Vec<String>,
}

impl Columns {
    pub(crate) fn read<R: std::io::Read>(rdr: &mut csv::Reader<R>) -> Result<Self> {
        let names: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::parse(1, format!("column {}", i + 1), "empty header name"));
            }
            if names[..i].contains(n) {
                return Err(Error::parse(1, n.clone(), "duplicate column"));
            }
        }
        Ok(Columns { names })
    }

    pub(crate) fn names(&self) -> &[String] {
        &self.names
    }

    pub(crate) fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.find(name)
            .ok_or_else(|| Error::parse(1, name, "required column is missing from the header"))
    }

    /// Rejects header names outside `allowed`.
    pub(crate) fn only(&self, allowed: impl Fn(&str) -> bool) -> Result<()> {
        match self.names.iter().find(|n| !allowed(n)) {
            Some(n) => Err(Error::parse(1, n.clone(), "unknown column")),
            None => Ok(()),
        }
    }
}

pub(crate) fn field<'r>(record: &'r csv::StringRecord, idx: usize, name: &str) -> Result<&'r str> {
    record
        .get(idx)
        .ok_or_else(|| Error::parse(line_of(record), name, "missing field"))
}

pub(crate) fn number(record: &csv::StringRecord, idx: usize, name: &str) -> Result<f64> {
    let raw = field(record, idx, name)?;
    let v: f64 = raw
        .parse()
        .map_err(|_| Error::parse(line_of(record), name, format!("{raw:?} is not a number")))?;
    if !v.is_finite() {
        return Err(Error::parse(line_of(record), name, format!("{raw:?} is not finite")));
    }
    Ok(v)
}
