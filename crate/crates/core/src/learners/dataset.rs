use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, FormulaSet, Metric, MetricDef, Modality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    /// Labels in {0, 1}.
    Binary01,
    /// Labels in {-1, +1}.
    BinaryPm1,
    Real,
    /// Ordered, finitely valued features with labels in {0, 1}.
    OrdinalFeaturesBinaryLabel,
}

impl LabelKind {
    pub fn accepts(self, y: f64) -> bool {
        match self {
            LabelKind::Binary01 | LabelKind::OrdinalFeaturesBinaryLabel => y == 0.0 || y == 1.0,
            LabelKind::BinaryPm1 => y == -1.0 || y == 1.0,
            LabelKind::Real => y.is_finite(),
        }
    }
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelKind::Binary01 => "binary 0/1",
            LabelKind::BinaryPm1 => "binary -1/+1",
            LabelKind::Real => "real",
            LabelKind::OrdinalFeaturesBinaryLabel => "ordinal-feature binary 0/1",
        })
    }
}

/// Training set of `(x, y)` rows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledDataset {
    x_dim: usize,
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    kind: LabelKind,
}

impl LabeledDataset {
    pub fn new(x_dim: usize, x: Vec<Vec<f64>>, y: Vec<f64>, kind: LabelKind) -> Result<Self> {
        if x_dim == 0 {
            return Err(Error::config("data points need at least one coordinate"));
        }
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        for row in &x {
            if row.len() != x_dim {
                return Err(Error::DimensionMismatch {
                    expected: x_dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::domain(format!("data point {row:?} is not finite")));
            }
        }
        if let Some(v) = y.iter().find(|v| !kind.accepts(**v)) {
            return Err(Error::domain(format!("{v} is not a valid {kind} label")));
        }
        Ok(LabeledDataset { x_dim, x, y, kind })
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.x[i]
    }

    pub fn y(&self, i: usize) -> f64 {
        self.y[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn labels(&self) -> &[f64] {
        &self.y
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.x.iter().map(Vec::as_slice).zip(self.y.iter().copied())
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        LabeledDataset {
            x_dim: self.x_dim,
            x: indices.iter().map(|&i| self.x[i].clone()).collect(),
            y: indices.iter().map(|&i| self.y[i]).collect(),
            kind: self.kind,
        }
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::empty("training set is empty"));
        }
        Ok(())
    }

    pub(crate) fn require_kind(&self, allowed: &[LabelKind]) -> Result<()> {
        if !allowed.contains(&self.kind) {
            return Err(Error::config(format!("learner does not accept {} labels", self.kind)));
        }
        Ok(())
    }

    pub(crate) fn require_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.x_dim {
            return Err(Error::DimensionMismatch {
                expected: self.x_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// The rows as `obs:0` formulas.
    pub fn observations(&self, x_metric: Metric, y_metric: Metric) -> Result<FormulaSet> {
        let mut set = FormulaSet::new(self.x_dim, MetricDef::x(x_metric), MetricDef::y(y_metric))?;
        for (x, y) in self.rows() {
            set.push(Formula::new(Modality::observation(0), x.to_vec(), y))?;
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_labels_and_dimensions() {
        assert!(LabeledDataset::new(1, vec![vec![0.0]], vec![2.0], LabelKind::Binary01).is_err());
        assert!(LabeledDataset::new(1, vec![vec![0.0]], vec![-1.0], LabelKind::BinaryPm1).is_ok());
        assert!(LabeledDataset::new(2, vec![vec![0.0]], vec![1.0], LabelKind::Real).is_err());
        assert!(LabeledDataset::new(1, vec![vec![f64::NAN]], vec![1.0], LabelKind::Real).is_err());
        let d = LabeledDataset::new(1, vec![vec![0.0], vec![1.0]], vec![0.0, 1.0], LabelKind::Binary01).unwrap();
        assert_eq!(d.subset(&[1]).labels(), &[1.0]);
    }
}
