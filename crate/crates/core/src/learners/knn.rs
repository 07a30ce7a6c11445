//! Nearest-neighbour classifiers with fixed and adaptive neighbourhood size.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use crate::error::{Error, Result};

/// Error rates of the constants 0 and 1 on a focus set and the better one
/// (0 on ties).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantFit {
    pub error_0: f64,
    pub error_1: f64,
    pub label: f64,
    pub error: f64,
}

impl ConstantFit {
    pub fn of(labels: impl IntoIterator<Item = f64>) -> Self {
        let (mut n, mut ones) = (0usize, 0usize);
        for y in labels {
            n += 1;
            ones += usize::from(y == 1.0);
        }
        let error_0 = ones as f64 / n as f64;
        let error_1 = (n - ones) as f64 / n as f64;
        let label = if error_1 < error_0 { 1.0 } else { 0.0 };
        ConstantFit {
            error_0,
            error_1,
            label,
            error: error_0.min(error_1),
        }
    }

    /// Frequency of the prevalent class.
    pub fn prevalence(&self) -> f64 {
        1.0 - self.error
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Row indices of the training set ordered by Euclidean distance to `x`,
/// ties by row index.
pub fn neighbour_order(x: &[f64], s: &LabeledDataset) -> Vec<usize> {
    let d: Vec<f64> = s.points().iter().map(|p| distance(x, p)).collect();
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    idx
}

fn check(x: &[f64], s: &LabeledDataset) -> Result<()> {
    s.require_nonempty()?;
    s.require_kind(&[LabelKind::Binary01, LabelKind::OrdinalFeaturesBinaryLabel])?;
    s.require_dim(x)
}

fn check_k(k: usize, upper: usize, what: &str) -> Result<()> {
    if k == 0 || k > upper {
        return Err(Error::config(format!("{what} must lie in 1..={upper}, got {k}")));
    }
    Ok(())
}

fn fit_focus(s: &LabeledDataset, order: &[usize], k: usize) -> ConstantFit {
    ConstantFit::of(order[..k].iter().map(|&i| s.y(i)))
}

/// Classifies `x` by the better constant on its `k` nearest neighbours.
pub fn knn_predict(x: &[f64], s: &LabeledDataset, k: usize) -> Result<Decision> {
    check(x, s)?;
    check_k(k, s.len(), "k")?;
    let order = neighbour_order(x, s);
    let fit = fit_focus(s, &order, k);
    let mut d = Decision::new(Outcome::Label { label: fit.label }, fit.error, "erm");
    d.trace = vec![
        TraceStep::new("focusing", json!({"k": k, "neighbours": &order[..k]}), None),
        TraceStep::new("fitting", json!({"error_0": fit.error_0, "error_1": fit.error_1}), None),
        TraceStep::new("optimal_selection", json!({"label": fit.label}), Some(fit.error)),
    ];
    Ok(d)
}

/// `c1 * sqrt((ln n + ln(1/delta)) / k)`.
pub fn ada_threshold(n: f64, k: usize, delta: f64, c1: f64) -> Result<f64> {
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::domain(format!("training size must be >= 1, got {n}")));
    }
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::domain(format!("delta must lie in (0, 1], got {delta}")));
    }
    if !(c1 > 0.0 && c1.is_finite()) {
        return Err(Error::domain(format!("c1 must be positive, got {c1}")));
    }
    Ok(c1 * ((n.ln() + (1.0 / delta).ln()) / k as f64).sqrt())
}

/// When the adaptive loop stops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdaRule {
    /// Stop once the error rate of the selected constant exceeds the
    /// threshold; answer only if that happened before `k = n`.
    #[default]
    ErrorAboveThreshold,
    /// Stop once the bias `p - 0.5` of the prevalent class reaches the
    /// threshold and answer; abstain if it never does.
    BiasReachesThreshold,
}

/// Adaptive k-NN: grows `k` from `k0` until the stopping rule fires.
pub fn ada_knn_predict(x: &[f64], s: &LabeledDataset, k0: usize, delta: f64, c1: f64, rule: AdaRule) -> Result<Decision> {
    check(x, s)?;
    let n = s.len();
    check_k(k0, n, "k0")?;
    let order = neighbour_order(x, s);
    let mut trace = Vec::new();
    let mut stopped = None;
    let mut last = None;
    for k in k0..=n {
        let fit = fit_focus(s, &order, k);
        let threshold = ada_threshold(n as f64, k, delta, c1)?;
        trace.push(TraceStep::new(
            "proper_training",
            json!({"k": k, "label": fit.label, "error_rate": fit.error, "threshold": threshold}),
            Some(fit.error),
        ));
        last = Some((k, fit));
        let fire = match rule {
            AdaRule::ErrorAboveThreshold => fit.error > threshold,
            AdaRule::BiasReachesThreshold => fit.prevalence() - 0.5 >= threshold,
        };
        if fire {
            trace.push(TraceStep::new("break", json!({"k": k}), None));
            stopped = Some((k, fit));
            break;
        }
    }
    let (k, fit) = last.expect("k0 <= n");
    let answer = match (rule, stopped) {
        (AdaRule::ErrorAboveThreshold, Some((k, fit))) if k < n => Some(fit),
        (AdaRule::BiasReachesThreshold, Some((_, fit))) => Some(fit),
        _ => None,
    };
    trace.push(TraceStep::new(
        "combining",
        json!({"k": k, "label": answer.map(|f| f.label)}),
        Some(fit.error),
    ));
    let mut d = match answer {
        Some(f) => Decision::new(Outcome::Label { label: f.label }, f.error, "erm"),
        None => {
            let mut d = Decision::new(Outcome::Undefined, fit.error, "erm");
            d.abstained = true;
            d
        }
    };
    d.trace = trace;
    Ok(d)
}

/// `2 exp(-2 k (p - 0.5)^2)` for a prevalent-class frequency `p` in `[0, 1]`.
pub fn hoeffding_weight(p: f64, k: usize) -> f64 {
    let t = p - 0.5;
    2.0 * (-2.0 * k as f64 * t * t).exp()
}

/// k-NN choosing `k` in `k0..m` with minimal Hoeffding weight (ties to the
/// smallest `k`).
pub fn hoeffding_knn_predict(x: &[f64], s: &LabeledDataset, k0: usize) -> Result<Decision> {
    check(x, s)?;
    let m = s.len();
    if m < 2 {
        return Err(Error::config("Hoeffding k-NN needs at least two training rows"));
    }
    check_k(k0, m - 1, "k0")?;
    let order = neighbour_order(x, s);
    let rows: Vec<(usize, ConstantFit, f64)> = (k0..m)
        .map(|k| {
            let fit = fit_focus(s, &order, k);
            (k, fit, hoeffding_weight(fit.prevalence(), k))
        })
        .collect();
    let best = rows
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("k0 < m");
    let (_, fit, _) = rows[best];
    let mut d = Decision::new(Outcome::Label { label: fit.label }, fit.error, "erm");
    d.trace = rows
        .iter()
        .enumerate()
        .map(|(i, (k, f, w))| {
            TraceStep::new(
                "weight",
                json!({"k": k, "p": f.prevalence(), "weight": w, "label": f.label, "selected": i == best}),
                Some(f.error),
            )
        })
        .collect();
    Ok(d)
}

/// `k` chosen by [`hoeffding_knn_predict`], read back from its trace.
pub fn selected_k(d: &Decision) -> Option<usize> {
    d.trace
        .iter()
        .find(|t| t.params["selected"] == true)
        .and_then(|t| t.params["k"].as_u64())
        .map(|k| k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{engine_pointwise, erm_theory};
    use crate::theory::HypothesisSpec;

    fn line(xs: &[f64], ys: &[f64]) -> LabeledDataset {
        LabeledDataset::new(1, xs.iter().map(|x| vec![*x]).collect(), ys.to_vec(), LabelKind::Binary01).unwrap()
    }

    #[test]
    fn majority_of_neighbours() {
        let s = line(&[0.0, 1.0, 2.0, 10.0], &[1.0, 1.0, 0.0, 0.0]);
        let d = knn_predict(&[0.5], &s, 3).unwrap();
        assert_eq!(d.label(), Some(1.0));
        assert!((d.loss - 1.0 / 3.0).abs() < 1e-15);
        let focus = s.subset(&[0, 1, 2]);
        let e = engine_pointwise(&erm_theory(), &HypothesisSpec::constant(1.0), &focus).unwrap();
        assert!((e.total - d.loss).abs() < 1e-15);
        let d = knn_predict(&[10.0], &s, 1).unwrap();
        assert_eq!((d.label(), d.loss), (Some(0.0), 0.0));
    }

    #[test]
    fn distance_ties_admit_lower_row_index() {
        let s = line(&[-1.0, 1.0], &[0.0, 1.0]);
        let d = knn_predict(&[0.0], &s, 1).unwrap();
        assert_eq!(d.label(), Some(0.0));
        let swapped = line(&[1.0, -1.0], &[1.0, 0.0]);
        assert_eq!(knn_predict(&[0.0], &swapped, 1).unwrap().label(), Some(1.0));
        assert_eq!(knn_predict(&[0.0], &s, 1).unwrap(), d);
    }

    #[test]
    fn equal_error_rates_select_zero() {
        let s = line(&[0.0, 1.0], &[1.0, 0.0]);
        assert_eq!(knn_predict(&[0.5], &s, 2).unwrap().label(), Some(0.0));
    }

    #[test]
    fn threshold_closed_form_and_domain() {
        let v = ada_threshold(std::f64::consts::E, 8, (-1.0f64).exp(), 1.0).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        assert!(ada_threshold(10.0, 4, 1.0, 1.0).unwrap() > ada_threshold(10.0, 5, 1.0, 1.0).unwrap());
        assert!(ada_threshold(10.0, 4, 0.0, 1.0).is_err());
        assert!(ada_threshold(0.5, 4, 0.5, 1.0).is_err());
    }

    #[test]
    fn hoeffding_weight_values() {
        assert_eq!(hoeffding_weight(0.5, 17), 2.0);
        assert!((hoeffding_weight(0.8, 10) - 2.0 * (-1.8f64).exp()).abs() < 1e-15);
        assert!((hoeffding_weight(0.8, 10) - 0.330_597).abs() < 1e-6);
    }

    #[test]
    fn hoeffding_single_candidate_and_uniform_labels() {
        let s = line(&[0.0, 1.0, 2.0], &[1.0, 1.0, 1.0]);
        let d = hoeffding_knn_predict(&[0.0], &s, 2).unwrap();
        assert_eq!(d.trace.len(), 1);
        assert_eq!(selected_k(&d), Some(2));
        let d = hoeffding_knn_predict(&[0.0], &s, 1).unwrap();
        assert_eq!(d.label(), Some(1.0));
        assert_eq!(selected_k(&d), Some(2));
    }
}
