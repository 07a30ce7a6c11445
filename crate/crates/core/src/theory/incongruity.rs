use serde::{Deserialize, Serialize};

use super::model::{aspect_deviations_with, build_full_model, FullModel, HypothesisSpec};
use super::{Condition, DeviationFn};
use crate::aggregation::{AspectValue, ProperAggregator, ReductionMode, TotalAggregator};
use crate::error::{Error, Result};
use crate::formula::FormulaSet;

/// One aspect of incongruity: which pairs collide, how far apart they are,
/// and how the deviations are aggregated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aspect {
    pub condition: Condition,
    pub deviation: DeviationFn,
    pub aggregator: ProperAggregator,
}

impl Aspect {
    pub fn new(condition: Condition, deviation: DeviationFn, aggregator: ProperAggregator) -> Self {
        Aspect {
            condition,
            deviation,
            aggregator,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.condition.validate()?;
        self.deviation.validate()?;
        self.aggregator.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncongruityTheory {
    name: String,
    aspects: Vec<Aspect>,
}

impl IncongruityTheory {
    pub fn new(name: impl Into<String>, aspects: Vec<Aspect>) -> Result<Self> {
        let t = IncongruityTheory {
            name: name.into(),
            aspects,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.aspects.is_empty() {
            return Err(Error::config(format!("theory {:?} has no aspects", self.name)));
        }
        self.aspects.iter().try_for_each(Aspect::validate)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aspects(&self) -> &[Aspect] {
        &self.aspects
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum Regularization {
    #[default]
    None,
    /// `alpha * ||w||^2` over the hypothesis's linear form.
    SquaredWeightNorm { alpha: f64 },
}

impl Regularization {
    pub fn validate(&self) -> Result<()> {
        match self {
            Regularization::SquaredWeightNorm { alpha } if !(alpha.is_finite() && *alpha >= 0.0) => Err(
                Error::config(format!("regularization weight must be finite and >= 0, got {alpha}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn value(&self, h: &HypothesisSpec) -> Result<Option<f64>> {
        match self {
            Regularization::None => Ok(None),
            Regularization::SquaredWeightNorm { alpha } => {
                let form = h.linear_form().ok_or_else(|| {
                    Error::config("squared weight norm regularization needs a hypothesis with a linear form")
                })?;
                Ok(Some(alpha * form.weight_norm_sq()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AspectBreakdown {
    pub aspect: usize,
    pub pairs: usize,
    /// Aggregated deviation; the top aggregator's identity when there were no
    /// colliding pairs.
    pub incongruity: f64,
    pub no_collisions: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Incongruity {
    pub total: f64,
    pub aspects: Vec<AspectBreakdown>,
    pub regularization: Option<f64>,
}

/// Total proper incongruity of a hypothesis against observations.
pub fn total_incongruity(
    h: &HypothesisSpec,
    s: &FormulaSet,
    t: &IncongruityTheory,
    reg: &Regularization,
    top: &TotalAggregator,
) -> Result<Incongruity> {
    total_incongruity_with(h, s, t, reg, top, ReductionMode::BitExact)
}

pub fn total_incongruity_with(
    h: &HypothesisSpec,
    s: &FormulaSet,
    t: &IncongruityTheory,
    reg: &Regularization,
    top: &TotalAggregator,
    mode: ReductionMode,
) -> Result<Incongruity> {
    reg.validate()?;
    let model = build_full_model(h, s, t)?;
    model_incongruity(&model, t, reg.value(h)?, top, mode)
}

/// Total incongruity over an already built full model.
pub fn model_incongruity(
    model: &FullModel,
    t: &IncongruityTheory,
    reg_value: Option<f64>,
    top: &TotalAggregator,
    mode: ReductionMode,
) -> Result<Incongruity> {
    t.validate()?;
    top.validate()?;
    let mut values = Vec::with_capacity(t.aspects().len());
    let mut aspects = Vec::with_capacity(t.aspects().len());
    for (i, a) in t.aspects().iter().enumerate() {
        let devs = aspect_deviations_with(model, a, mode)?;
        let value = if devs.is_empty() {
            AspectValue::empty()
        } else {
            AspectValue::new(a.aggregator.aggregate_with(&devs, mode)?, devs.len())
        };
        aspects.push(AspectBreakdown {
            aspect: i,
            pairs: devs.len(),
            incongruity: value.value.unwrap_or(top.identity()),
            no_collisions: devs.is_empty(),
        });
        values.push(value);
    }
    let total = top.combine(&values, reg_value)?;
    Ok(Incongruity {
        total,
        aspects,
        regularization: reg_value,
    })
}
