use crate::error::{Error, Result};
use crate::theory::HypothesisSpec;

use super::dataset::LabeledDataset;

/// Empirical risk `(1/m) sum |h(x_i) - y_i|` of a function hypothesis.
pub fn erm_loss(h: &HypothesisSpec, s: &LabeledDataset) -> Result<f64> {
    s.require_nonempty()?;
    let HypothesisSpec::PointFunction(f) = h else {
        return Err(Error::config("empirical risk needs a function hypothesis"));
    };
    let mut total = 0.0;
    for (x, y) in s.rows() {
        let v = f
            .eval(x)
            .scalar()
            .ok_or_else(|| Error::domain("empirical risk needs scalar predictions"))?;
        total += (v - y).abs();
    }
    Ok(total / s.len() as f64)
}
