use nalgebra::{DMatrix, DVector};
use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use super::svm::check_alpha;
use crate::error::{Error, Result};
use crate::theory::LinearForm;

fn check(form: &LinearForm, s: &LabeledDataset) -> Result<()> {
    s.require_nonempty()?;
    if form.w.len() != s.x_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.x_dim(),
            found: form.w.len(),
        });
    }
    Ok(())
}

/// `alpha |w|^2 + (1/m) sum (f(x) - y)^2`.
pub fn ridge_loss(form: &LinearForm, s: &LabeledDataset, alpha: f64) -> Result<f64> {
    check(form, s)?;
    check_alpha(alpha)?;
    let total: f64 = s
        .rows()
        .map(|(x, y)| {
            let r = form.eval(x) - y;
            r * r
        })
        .sum();
    Ok(alpha * form.weight_norm_sq() + total / s.len() as f64)
}

/// Minimizer of [`ridge_loss`] with an unregularized intercept, from the
/// normal equations.
pub fn ridge_fit(s: &LabeledDataset, alpha: f64) -> Result<LinearForm> {
    s.require_nonempty()?;
    check_alpha(alpha)?;
    let (m, n) = (s.len(), s.x_dim());
    let x = DMatrix::from_fn(m, n + 1, |i, j| if j < n { s.x(i)[j] } else { 1.0 });
    let y = DVector::from_column_slice(s.labels());
    let mut a = x.transpose() * &x;
    for j in 0..n {
        a[(j, j)] += m as f64 * alpha;
    }
    let rhs = x.transpose() * y;
    let svd = a.svd(true, true);
    let max = svd.singular_values.max();
    let min = svd.singular_values.min();
    if min.is_nan() || min <= 1e-12 * max.max(1.0) {
        return Err(Error::Singular(format!(
            "normal equations are singular (alpha = {alpha}); use a regularization weight alpha > 0"
        )));
    }
    let sol = svd.solve(&rhs, 0.0).map_err(|e| Error::Singular(e.to_string()))?;
    Ok(LinearForm::new(sol.rows(0, n).iter().copied().collect(), sol[n]))
}

pub fn ridge_train(s: &LabeledDataset, alpha: f64) -> Result<Decision> {
    s.require_kind(&[LabelKind::Real, LabelKind::Binary01, LabelKind::BinaryPm1])?;
    let form = ridge_fit(s, alpha)?;
    let loss = ridge_loss(&form, s, alpha)?;
    let mut d = Decision::new(
        Outcome::Linear {
            w: form.w.clone(),
            b: form.b,
        },
        loss,
        "ridge",
    );
    d.trace = vec![TraceStep::new("fitting", json!({"alpha": alpha, "method": "normal_equations"}), Some(loss))];
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{engine_pointwise, ridge_theory};
    use crate::theory::HypothesisSpec;

    fn line(xs: &[f64], ys: &[f64]) -> LabeledDataset {
        LabeledDataset::new(1, xs.iter().map(|x| vec![*x]).collect(), ys.to_vec(), LabelKind::Real).unwrap()
    }

    #[test]
    fn loss_examples() {
        let s = line(&[1.0, 1.0], &[0.0, 2.0]);
        assert_eq!(ridge_loss(&LinearForm::new(vec![0.0], 1.0), &s, 0.0).unwrap(), 1.0);
        let f = LinearForm::new(vec![2.0], 0.0);
        let s = line(&[0.0], &[1.0]);
        assert_eq!(ridge_loss(&f, &s, 0.5).unwrap(), 3.0);
        let e = engine_pointwise(&ridge_theory(0.5), &HypothesisSpec::linear(f), &s).unwrap();
        assert_eq!(e.total, 3.0);
    }

    #[test]
    fn closed_form_fits() {
        let s = line(&[0.0, 1.0, 2.0, 3.0], &[1.0, 3.0, 5.0, 7.0]);
        let f = ridge_fit(&s, 0.0).unwrap();
        assert!((f.w[0] - 2.0).abs() < 1e-9 && (f.b - 1.0).abs() < 1e-9);
        assert!(ridge_train(&s, 0.0).unwrap().loss < 1e-18);
        let f = ridge_fit(&s, 1e9).unwrap();
        assert!(f.w[0].abs() < 1e-8);
        assert!((f.b - 4.0).abs() < 1e-6);
        assert!(matches!(ridge_fit(&line(&[1.0, 1.0], &[0.0, 2.0]), 0.0), Err(Error::Singular(_))));
        assert!(ridge_fit(&line(&[1.0, 1.0], &[0.0, 2.0]), 0.1).is_ok());
    }
}
