use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::learners::sigmoid_hypothesis;
use crate::theory::{HypothesisSpec, LinearForm};

/// JSON description of a function hypothesis, e.g.
/// `{"id": "linear", "params": {"w": [0.5], "b": 1.0}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum HypothesisDocument {
    Constant { value: f64 },
    Linear { w: Vec<f64>, b: f64 },
    /// `1 / (1 + exp(-(w . x + b)))`.
    Sigmoid { w: Vec<f64>, b: f64 },
}

pub fn parse_hypothesis(text: &str) -> Result<HypothesisDocument> {
    let doc: HypothesisDocument = serde_json::from_str(text)?;
    let finite = match &doc {
        HypothesisDocument::Constant { value } => value.is_finite(),
        HypothesisDocument::Linear { w, b } | HypothesisDocument::Sigmoid { w, b } => {
            b.is_finite() && w.iter().all(|v| v.is_finite())
        }
    };
    if !finite {
        return Err(Error::config("hypothesis parameters must be finite"));
    }
    Ok(doc)
}

impl HypothesisDocument {
    /// Builds the hypothesis for data points of dimension `x_dim`.
    pub fn to_spec(&self, x_dim: usize) -> Result<HypothesisSpec> {
        let check = |w: &[f64]| {
            if w.len() != x_dim {
                return Err(Error::DimensionMismatch {
                    expected: x_dim,
                    found: w.len(),
                });
            }
            Ok(())
        };
        match self {
            HypothesisDocument::Constant { value } => Ok(HypothesisSpec::constant(*value)),
            HypothesisDocument::Linear { w, b } => {
                check(w)?;
                Ok(HypothesisSpec::linear(LinearForm::new(w.clone(), *b)))
            }
            HypothesisDocument::Sigmoid { w, b } => {
                check(w)?;
                Ok(sigmoid_hypothesis(LinearForm::new(w.clone(), *b)))
            }
        }
    }
}
