use std::io::Read;
use std::path::Path;

use serde::Serialize;

use super::{csv_reader, field, line_of, number, open, Columns};
use crate::error::{Error, Result};
use crate::formula::{Formula, FormulaSet, Metric, MetricDef, Modality};
use crate::learners::{LabelKind, LabeledDataset};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetRow {
    pub line: u64,
    pub modality: Modality,
    pub x: Vec<f64>,
    pub y: f64,
}

/// Rows of a dataset file: columns `x1..xn`, `y` and an optional `mod`
/// column holding `obs:<g>` or `hyp:<g>` (default `obs:0`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dataset {
    pub x_dim: usize,
    pub rows: Vec<DatasetRow>,
}

pub fn read_dataset<R: Read>(input: R) -> Result<Dataset> {
    let mut rdr = csv_reader(input);
    let cols = Columns::read(&mut rdr)?;
    cols.only(|n| n == "y" || n == "mod" || x_column(n).is_some())?;
    let x_dim = cols.names().iter().filter(|n| x_column(n).is_some()).count();
    if x_dim == 0 {
        return Err(Error::parse(1, "x1", "required column is missing from the header"));
    }
    let x_idx = (1..=x_dim)
        .map(|i| cols.require(&format!("x{i}")))
        .collect::<Result<Vec<_>>>()?;
    let y_idx = cols.require("y")?;
    let mod_idx = cols.find("mod");
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let x = x_idx
            .iter()
            .enumerate()
            .map(|(i, &c)| number(&rec, c, &format!("x{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let y = number(&rec, y_idx, "y")?;
        let modality = match mod_idx {
            Some(c) => {
                let raw = field(&rec, c, "mod")?;
                raw.parse()
                    .map_err(|_| Error::parse(line, "mod", format!("{raw:?} is not obs:<g> or hyp:<g>")))?
            }
            None => Modality::observation(0),
        };
        rows.push(DatasetRow { line, modality, x, y });
    }
    Ok(Dataset { x_dim, rows })
}

pub fn parse_dataset(text: &str) -> Result<Dataset> {
    read_dataset(text.as_bytes())
}

fn x_column(name: &str) -> Option<usize> {
    let n = name.strip_prefix('x')?;
    if n.starts_with('0') {
        return None;
    }
    n.parse().ok().filter(|i| *i >= 1)
}

impl Dataset {
    pub fn load(path: &Path) -> Result<Self> {
        read_dataset(open(path)?)
    }

    /// Observation rows as a formula set with the given metrics.
    pub fn observations(&self, x_metric: Metric, y_metric: Metric) -> Result<FormulaSet> {
        let mut set = FormulaSet::new(self.x_dim, MetricDef::x(x_metric), MetricDef::y(y_metric))?;
        for r in self.rows.iter().filter(|r| r.modality.is_observation()) {
            set.push(Formula::new(r.modality, r.x.clone(), r.y))?;
        }
        Ok(set)
    }

    /// Hypothetical rows, in file order.
    pub fn hypothetical(&self) -> Vec<Formula> {
        self.rows
            .iter()
            .filter(|r| r.modality.is_hypothetical())
            .map(|r| Formula::new(r.modality, r.x.clone(), r.y))
            .collect()
    }

    /// Observation rows as a labeled training set.
    pub fn labeled(&self, kind: LabelKind) -> Result<LabeledDataset> {
        let obs: Vec<&DatasetRow> = self.rows.iter().filter(|r| r.modality.is_observation()).collect();
        if let Some(r) = obs.iter().find(|r| !kind.accepts(r.y)) {
            return Err(Error::parse(r.line, "y", format!("{} is not a valid {kind} label", r.y)));
        }
        LabeledDataset::new(
            self.x_dim,
            obs.iter().map(|r| r.x.clone()).collect(),
            obs.iter().map(|r| r.y).collect(),
            kind,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_rows_and_modalities() {
        let d = parse_dataset("x2,x1,y,mod\n1,2,0.5,obs:1\n3, 4 ,1,hyp\n").unwrap();
        assert_eq!(d.x_dim, 2);
        assert_eq!(d.rows[0].x, vec![2.0, 1.0]);
        assert_eq!(d.rows[0].modality, Modality::observation(1));
        assert_eq!(d.rows[1].modality, Modality::hypothetical(0));
        assert_eq!(d.rows[1].line, 3);
        assert_eq!(d.hypothetical().len(), 1);
    }

    #[test]
    fn reports_line_and_field() {
        let err = parse_dataset("x1,y\n1,2\n3,abc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref field, .. } if field == "y"), "{err:?}");
        let err = parse_dataset("x1,y\n1,nan\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_dataset("x1,x3,y\n1,2,3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, ref field, .. } if field == "x2"));
        let err = parse_dataset("x1,y,z\n1,2,3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, ref field, .. } if field == "z"));
        let err = parse_dataset("x1,y,mod\n1,2,maybe\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref field, .. } if field == "mod"));
        assert!(parse_dataset("x1,y\n1\n").unwrap_err().is_schema_error());
    }

    #[test]
    fn header_only_is_an_empty_dataset() {
        let d = parse_dataset("x1,y\n").unwrap();
        assert!(d.rows.is_empty());
    }
}
