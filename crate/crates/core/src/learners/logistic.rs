use super::dataset::{LabelKind, LabeledDataset};
use crate::error::{Error, Result};
use crate::formula::Feedback;
use crate::theory::{HypothesisSpec, LinearForm, PointFunction};

pub fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

/// `x -> 1 / (1 + exp(-(w . x + b)))`.
pub fn sigmoid_hypothesis(form: LinearForm) -> HypothesisSpec {
    HypothesisSpec::PointFunction(PointFunction::new("sigmoid", move |x| {
        Feedback::Scalar(sigmoid(form.eval(x)))
    }))
}

/// `(1/m) sum ln max(|y - f(x)|, floor)` for `f` the sigmoid of `form`.
pub fn logistic_loss(form: &LinearForm, s: &LabeledDataset, floor: f64) -> Result<f64> {
    s.require_nonempty()?;
    s.require_kind(&[LabelKind::Binary01])?;
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(Error::config(format!("log floor must be positive, got {floor}")));
    }
    if form.w.len() != s.x_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.x_dim(),
            found: form.w.len(),
        });
    }
    let total: f64 = s
        .rows()
        .map(|(x, y)| (y - sigmoid(form.eval(x))).abs().max(floor).ln())
        .sum();
    Ok(total / s.len() as f64)
}
