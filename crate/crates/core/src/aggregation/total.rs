use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-aspect input to a [`TotalAggregator`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AspectValue {
    /// Aspect incongruity; `None` when the aspect had no colliding pairs.
    pub value: Option<f64>,
    /// Number of colliding pairs behind the value.
    pub pairs: usize,
}

impl AspectValue {
    pub fn new(value: f64, pairs: usize) -> Self {
        AspectValue {
            value: Some(value),
            pairs,
        }
    }

    pub fn empty() -> Self {
        AspectValue { value: None, pairs: 0 }
    }
}

/// Isotone combination of aspect incongruities and the regularization value.
///
/// An aspect without colliding pairs contributes the identity of the
/// combination: 0 to sums, a factor of 1 to the product form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum TotalAggregator {
    /// Exactly one aspect and no regularization.
    Passthrough,
    /// Sum of aspect incongruities plus the regularization value when present.
    Sum,
    /// One weight per aspect, then one for the regularization value when
    /// present.
    WeightedSum { weights: Vec<f64> },
    /// `1 - prod(1 - e_j)` over aspects with values in `[0, 1]`.
    OneMinusProductOfComplements,
    /// Same arithmetic as `Sum` but requires a regularization term.
    SumPlusReg,
    /// Like `WeightedSum`, with each aspect value first multiplied by its
    /// pair count. Turns a mean aspect aggregation back into a plain sum over
    /// pairs.
    CountWeightedSum { weights: Vec<f64> },
}

impl TotalAggregator {
    pub fn validate(&self) -> Result<()> {
        match self {
            TotalAggregator::WeightedSum { weights } | TotalAggregator::CountWeightedSum { weights } => {
                match weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
                    Some(w) => Err(Error::config(format!(
                        "total aggregator weights must be finite and >= 0 (isotone), got {w}"
                    ))),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    /// Identity element contributed by an aspect with no colliding pairs.
    pub fn identity(&self) -> f64 {
        0.0
    }

    pub fn combine(&self, aspects: &[AspectValue], reg: Option<f64>) -> Result<f64> {
        self.validate()?;
        let values = || aspects.iter().map(|a| a.value.unwrap_or(self.identity()));
        let expected_weights = aspects.len() + usize::from(reg.is_some());
        let check_weights = |weights: &Vec<f64>| {
            if weights.len() != expected_weights {
                return Err(Error::config(format!(
                    "expected {expected_weights} weights (aspects plus regularization), got {}",
                    weights.len()
                )));
            }
            Ok(())
        };
        match self {
            TotalAggregator::Passthrough => {
                if aspects.len() != 1 || reg.is_some() {
                    return Err(Error::config(
                        "passthrough requires exactly one aspect and no regularization",
                    ));
                }
                Ok(values().next().unwrap_or(0.0))
            }
            TotalAggregator::Sum => Ok(values().sum::<f64>() + reg.unwrap_or(0.0)),
            TotalAggregator::SumPlusReg => {
                let r = reg.ok_or_else(|| Error::config("sum_plus_reg requires a regularization term"))?;
                Ok(values().sum::<f64>() + r)
            }
            TotalAggregator::WeightedSum { weights } => {
                check_weights(weights)?;
                let s: f64 = values().zip(weights).map(|(v, w)| v * w).sum();
                Ok(s + reg.map_or(0.0, |r| r * weights[aspects.len()]))
            }
            TotalAggregator::CountWeightedSum { weights } => {
                check_weights(weights)?;
                let s: f64 = aspects
                    .iter()
                    .zip(weights)
                    .map(|(a, w)| w * a.pairs as f64 * a.value.unwrap_or(0.0))
                    .sum();
                Ok(s + reg.map_or(0.0, |r| r * weights[aspects.len()]))
            }
            TotalAggregator::OneMinusProductOfComplements => {
                if reg.is_some() {
                    return Err(Error::config(
                        "one_minus_product_of_complements does not take a regularization term",
                    ));
                }
                let mut prod = 1.0;
                for e in values() {
                    if !(0.0..=1.0).contains(&e) {
                        return Err(Error::domain(format!(
                            "product-of-complements inputs must lie in [0, 1], got {e}"
                        )));
                    }
                    prod *= 1.0 - e;
                }
                Ok(1.0 - prod)
            }
        }
    }
}
