//! JSON documents describing a theory and how its aspects are combined.
//!
//! ```json
//! {
//!   "name": "pointwise",
//!   "x_metric": {"id": "euclidean"},
//!   "y_metric": {"id": "absolute"},
//!   "aspects": [
//!     {
//!       "condition": {"and": [{"modality_is": {"arg": 1, "modality": "hyp:0"}},
//!                             {"modality_is": {"arg": 2, "modality": "obs:0"}},
//!                             "x_equal"]},
//!       "deviation": {"id": "rho_y"},
//!       "aggregator": {"id": "mean"}
//!     }
//!   ],
//!   "regularization": {"id": "none"},
//!   "top": {"id": "passthrough"}
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{total_incongruity_with, Aspect, HypothesisSpec, Incongruity, IncongruityTheory, Regularization};
use crate::aggregation::{ReductionMode, TotalAggregator};
use crate::error::{Error, Result};
use crate::formula::{FormulaSet, Metric, MetricDef};

fn default_x_metric() -> Metric {
    Metric::Euclidean
}

fn default_y_metric() -> Metric {
    Metric::Absolute
}

fn default_top() -> TotalAggregator {
    TotalAggregator::Passthrough
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryDocument {
    pub name: String,
    #[serde(default = "default_x_metric")]
    pub x_metric: Metric,
    #[serde(default = "default_y_metric")]
    pub y_metric: Metric,
    pub aspects: Vec<Aspect>,
    #[serde(default)]
    pub regularization: Regularization,
    #[serde(default = "default_top")]
    pub top: TotalAggregator,
}

impl TheoryDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TheoryDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.aspects.is_empty() {
            return Err(Error::config(format!("theory {:?} has no aspects", self.name)));
        }
        self.aspects.iter().try_for_each(Aspect::validate)?;
        self.x_metric.validate()?;
        self.y_metric.validate()?;
        self.regularization.validate()?;
        self.top.validate()
    }

    pub fn theory(&self) -> Result<IncongruityTheory> {
        IncongruityTheory::new(self.name.clone(), self.aspects.clone())
    }

    /// Empty formula set of dimension `x_dim` carrying the document's metrics.
    pub fn formula_set(&self, x_dim: usize) -> Result<FormulaSet> {
        FormulaSet::new(
            x_dim,
            MetricDef::x(self.x_metric.clone()),
            MetricDef::y(self.y_metric.clone()),
        )
    }

    /// Total incongruity of `h` against the observations `s`.
    pub fn evaluate(&self, h: &HypothesisSpec, s: &FormulaSet, mode: ReductionMode) -> Result<Incongruity> {
        total_incongruity_with(h, s, &self.theory()?, &self.regularization, &self.top, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "name": "pointwise",
        "aspects": [{
            "condition": {"and": [{"modality_is": {"arg": 1, "modality": "hyp:0"}},
                                  {"modality_is": {"arg": 2, "modality": "obs:0"}}, "x_equal"]},
            "deviation": {"id": "rho_y"},
            "aggregator": {"id": "mean"}
        }]
    }"#;

    #[test]
    fn defaults_and_round_trip() {
        let doc = TheoryDocument::from_json(DOC).unwrap();
        assert_eq!(doc.top, TotalAggregator::Passthrough);
        assert_eq!(doc.regularization, Regularization::None);
        assert_eq!(doc.x_metric, Metric::Euclidean);
        let again = TheoryDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(TheoryDocument::from_json(r#"{"name":"x","aspects":[]}"#).is_err());
        assert!(TheoryDocument::from_json("{").is_err());
        let bad_p = DOC.replace(r#"{"id": "mean"}"#, r#"{"id": "percentile", "params": {"p": 120}}"#);
        assert!(matches!(TheoryDocument::from_json(&bad_p), Err(Error::InvalidConfig(_))));
        let unknown = DOC.replace(r#""name""#, r#""extra": 1, "name""#);
        assert!(TheoryDocument::from_json(&unknown).is_err());
    }
}
