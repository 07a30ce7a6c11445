//! Linear support vector machine.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use crate::error::{Error, Result};
use crate::theory::LinearForm;

/// Step size `eta0 / sqrt(t)` for `iterations` steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(default = "default_eta0")]
    pub eta0: f64,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
}

fn default_eta0() -> f64 {
    0.1
}

fn default_iterations() -> usize {
    10_000
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            eta0: default_eta0(),
            iterations: default_iterations(),
        }
    }
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta0 > 0.0 && self.eta0.is_finite()) {
            return Err(Error::config(format!("eta0 must be positive, got {}", self.eta0)));
        }
        if self.iterations == 0 {
            return Err(Error::config("the iteration cap must be >= 1"));
        }
        Ok(())
    }

    pub fn step(&self, t: usize) -> f64 {
        self.eta0 / (t as f64).sqrt()
    }
}

fn check(form: &LinearForm, s: &LabeledDataset) -> Result<()> {
    s.require_nonempty()?;
    s.require_kind(&[LabelKind::BinaryPm1])?;
    if form.w.len() != s.x_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.x_dim(),
            found: form.w.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::config(format!("regularization weight must be finite and >= 0, got {alpha}")));
    }
    Ok(())
}

/// `alpha |w|^2 + (1/m) sum |y - f(x)|` over rows with `y f(x) <= 0`.
pub fn svm_loss(form: &LinearForm, s: &LabeledDataset, alpha: f64) -> Result<f64> {
    check(form, s)?;
    check_alpha(alpha)?;
    let mut total = 0.0;
    for (x, y) in s.rows() {
        let f = form.eval(x);
        if y * f <= 0.0 {
            total += (y - f).abs();
        }
    }
    Ok(alpha * form.weight_norm_sq() + total / s.len() as f64)
}

/// Smallest slacks meeting `xi >= 0` and `y f(x) >= 1 - xi`, summed.
pub fn svm_min_slack_sum(form: &LinearForm, s: &LabeledDataset) -> Result<f64> {
    check(form, s)?;
    Ok(s.rows().map(|(x, y)| (1.0 - y * form.eval(x)).max(0.0)).sum())
}

/// Rescales `f` so the smallest `|f(x)|` over correctly classified rows is 1,
/// flipping its sign first when it classifies no row correctly.
pub fn normalize_to_fprime(form: &LinearForm, s: &LabeledDataset) -> Result<LinearForm> {
    check(form, s)?;
    if form.b == 0.0 && form.w.iter().all(|w| *w == 0.0) {
        return Err(Error::domain("the zero function cannot be normalized"));
    }
    let margin = |f: &LinearForm| {
        s.rows()
            .map(|(x, y)| y * f.eval(x))
            .filter(|m| *m > 0.0)
            .fold(f64::INFINITY, f64::min)
    };
    let mut f = form.clone();
    let mut q = margin(&f);
    if q == f64::INFINITY {
        f = f.scaled(-1.0);
        q = margin(&f);
    }
    if q == f64::INFINITY {
        return Err(Error::domain("the function is zero on every training point"));
    }
    Ok(f.scaled(1.0 / q))
}

fn hinge_subgradient(form: &LinearForm, s: &LabeledDataset, alpha: f64) -> (Vec<f64>, f64) {
    let m = s.len() as f64;
    let mut gw: Vec<f64> = form.w.iter().map(|w| 2.0 * alpha * w).collect();
    let mut gb = 0.0;
    for (x, y) in s.rows() {
        if y * form.eval(x) < 1.0 {
            for (g, xi) in gw.iter_mut().zip(x) {
                *g -= y * xi / m;
            }
            gb -= y / m;
        }
    }
    (gw, gb)
}

pub fn training_errors(form: &LinearForm, s: &LabeledDataset) -> usize {
    s.rows().filter(|(x, y)| y * form.eval(x) <= 0.0).count()
}

/// Subgradient descent on the hinge objective, keeping the iterate whose
/// normalized form has the smallest [`svm_loss`].
pub fn svm_train(s: &LabeledDataset, alpha: f64, sched: &Schedule) -> Result<Decision> {
    s.require_kind(&[LabelKind::BinaryPm1])?;
    check_alpha(alpha)?;
    sched.validate()?;
    if s.len() < 2 || s.labels().iter().all(|y| *y == s.y(0)) {
        return Err(Error::config("SVM training needs both classes present"));
    }
    let mut form = LinearForm::new(vec![0.0; s.x_dim()], 0.0);
    let mut best: Option<(LinearForm, f64, usize)> = None;
    let mut trace = Vec::new();
    for t in 1..=sched.iterations {
        let (gw, gb) = hinge_subgradient(&form, s, alpha);
        let eta = sched.step(t);
        for (w, g) in form.w.iter_mut().zip(&gw) {
            *w -= eta * g;
        }
        form.b -= eta * gb;
        if let Ok(candidate) = normalize_to_fprime(&form, s) {
            let loss = svm_loss(&candidate, s, alpha)?;
            if best.as_ref().is_none_or(|(_, l, _)| loss < *l) {
                best = Some((candidate, loss, t));
            }
        }
        if t % 1000 == 0 || t == sched.iterations {
            trace.push(TraceStep::new("fitting", json!({"iteration": t}), best.as_ref().map(|b| b.1)));
        }
    }
    let (form, loss, at) = best.ok_or_else(|| Error::domain("no iterate could be normalized"))?;
    trace.push(TraceStep::new(
        "optimal_selection",
        json!({"iteration": at, "training_errors": training_errors(&form, s)}),
        Some(loss),
    ));
    let mut d = Decision::new(
        Outcome::Linear {
            w: form.w.clone(),
            b: form.b,
        },
        loss,
        "svm",
    );
    d.trace = trace;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{engine_pointwise, svm_theory};
    use crate::theory::HypothesisSpec;

    fn line(xs: &[f64], ys: &[f64]) -> LabeledDataset {
        LabeledDataset::new(1, xs.iter().map(|x| vec![*x]).collect(), ys.to_vec(), LabelKind::BinaryPm1).unwrap()
    }

    #[test]
    fn loss_examples() {
        let s = line(&[2.0, -2.0], &[1.0, -1.0]);
        let f = LinearForm::new(vec![1.0], 0.0);
        assert_eq!(svm_loss(&f, &s, 0.5).unwrap(), 0.5);
        let s = line(&[-0.5], &[1.0]);
        assert_eq!(svm_loss(&f, &s, 0.0).unwrap(), 1.5);
        let e = engine_pointwise(&svm_theory(0.0), &HypothesisSpec::linear(f), &s).unwrap();
        assert_eq!(e.total, 1.5);
    }

    #[test]
    fn normalization() {
        let s = line(&[2.0, 3.0, -1.0], &[1.0, 1.0, 1.0]);
        let f = LinearForm::new(vec![1.0], 0.0);
        assert_eq!(normalize_to_fprime(&f, &s).unwrap(), LinearForm::new(vec![0.5], 0.0));
        let s = line(&[1.0, -1.0], &[1.0, -1.0]);
        assert_eq!(normalize_to_fprime(&f, &s).unwrap(), f);
        let flipped = normalize_to_fprime(&LinearForm::new(vec![-2.0], 0.0), &s).unwrap();
        assert_eq!(flipped, LinearForm::new(vec![1.0], 0.0));
        assert!(normalize_to_fprime(&LinearForm::new(vec![0.0], 0.0), &s).is_err());
    }

    #[test]
    fn separable_training() {
        let s = LabeledDataset::new(
            2,
            vec![vec![2.0, 2.0], vec![3.0, 2.5], vec![2.5, 3.0], vec![-2.0, -2.0], vec![-3.0, -2.0], vec![-2.0, -3.5]],
            vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0],
            LabelKind::BinaryPm1,
        )
        .unwrap();
        let sched = Schedule { eta0: 0.1, iterations: 2000 };
        let d = svm_train(&s, 0.0, &sched).unwrap();
        let Outcome::Linear { w, b } = &d.outcome else { panic!() };
        let f = LinearForm::new(w.clone(), *b);
        assert_eq!(training_errors(&f, &s), 0);
        assert!(d.loss < 1e-3);
        let d = svm_train(&s, 0.1, &sched).unwrap();
        let Outcome::Linear { w, b } = &d.outcome else { panic!() };
        let f = LinearForm::new(w.clone(), *b);
        assert_eq!(training_errors(&f, &s), 0);
        assert!((d.loss - 0.1 * f.weight_norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn contradictory_duplicate_bounds_the_loss() {
        let s = line(&[1.0, 1.0, 3.0, -2.0], &[1.0, -1.0, 1.0, -1.0]);
        let d = svm_train(&s, 0.0, &Schedule { eta0: 0.1, iterations: 500 }).unwrap();
        assert!(d.loss.is_finite());
        assert!(d.loss >= 1.0 / 4.0);
        assert!(svm_train(&line(&[1.0, 2.0], &[1.0, 1.0]), 0.0, &Schedule::default()).is_err());
    }
}
