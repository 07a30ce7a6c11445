use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use crate::error::Result;

/// `Delta(c) = 1 - prod_j (1 - e_jc)` where `e_jc` is the error rate of class
/// `c` on the rows sharing the query's `j`-th feature value. Features with no
/// matching rows contribute a factor of 1.
pub fn naive_bayes_loss(z: &[f64], c: f64, s: &LabeledDataset) -> Result<(f64, Vec<Option<f64>>)> {
    s.require_nonempty()?;
    s.require_dim(z)?;
    let mut rates = Vec::with_capacity(z.len());
    let mut prod = 1.0;
    for (j, zj) in z.iter().enumerate() {
        let (mut n, mut wrong) = (0usize, 0usize);
        for (x, y) in s.rows() {
            if x[j] == *zj {
                n += 1;
                wrong += usize::from(y != c);
            }
        }
        let e = (n > 0).then(|| wrong as f64 / n as f64);
        if let Some(e) = e {
            prod *= 1.0 - e;
        }
        rates.push(e);
    }
    Ok((1.0 - prod, rates))
}

/// Class in {0, 1} with the smaller loss, 0 on ties.
pub fn naive_bayes_predict(z: &[f64], s: &LabeledDataset) -> Result<Decision> {
    s.require_kind(&[LabelKind::Binary01, LabelKind::OrdinalFeaturesBinaryLabel])?;
    let (l0, e0) = naive_bayes_loss(z, 0.0, s)?;
    let (l1, e1) = naive_bayes_loss(z, 1.0, s)?;
    let (label, loss) = if l1 < l0 { (1.0, l1) } else { (0.0, l0) };
    let unmatched: Vec<usize> = e0.iter().enumerate().filter(|(_, e)| e.is_none()).map(|(j, _)| j + 1).collect();
    let mut d = Decision::new(Outcome::Label { label }, loss, "naive_bayes");
    d.trace = vec![
        TraceStep::new("focusing", json!({"unmatched_features": unmatched}), None),
        TraceStep::new("fitting", json!({"class": 0, "error_rates": e0}), Some(l0)),
        TraceStep::new("fitting", json!({"class": 1, "error_rates": e1}), Some(l1)),
        TraceStep::new("optimal_selection", json!({"label": label}), Some(loss)),
    ];
    if !unmatched.is_empty() {
        d.flags.push("unmatched_features".to_string());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::engine_naive_bayes;

    fn ds() -> LabeledDataset {
        let x = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![1.0, 0.0]];
        LabeledDataset::new(2, x, vec![1.0, 1.0, 0.0, 0.0], LabelKind::Binary01).unwrap()
    }

    #[test]
    fn half_error_rates_give_three_quarters() {
        let (l, e) = naive_bayes_loss(&[0.0, 0.0], 1.0, &ds()).unwrap();
        assert_eq!(e, vec![Some(0.0), Some(0.5)]);
        assert_eq!(l, 0.5);
        let (l, _) = naive_bayes_loss(&[2.0, 1.0], 1.0, &ds()).unwrap();
        assert_eq!(l, 0.5);
        let x = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]];
        let s = LabeledDataset::new(2, x, vec![1.0, 1.0, 0.0, 0.0], LabelKind::Binary01).unwrap();
        assert_eq!(naive_bayes_loss(&[0.0, 0.0], 1.0, &s).unwrap().0, 0.75);
        assert_eq!(engine_naive_bayes(&[0.0, 0.0], 1.0, &s).unwrap().total, 0.75);
    }

    #[test]
    fn class_one_only_matches() {
        let d = naive_bayes_predict(&[0.0, 0.0], &ds()).unwrap();
        assert_eq!(d.label(), Some(1.0));
        let x = vec![vec![0.0, 5.0], vec![1.0, 6.0]];
        let s = LabeledDataset::new(2, x, vec![1.0, 0.0], LabelKind::Binary01).unwrap();
        let d = naive_bayes_predict(&[0.0, 5.0], &s).unwrap();
        assert_eq!((d.label(), d.loss), (Some(1.0), 0.0));
        let d = naive_bayes_predict(&[9.0, 9.0], &s).unwrap();
        assert_eq!((d.label(), d.loss), (Some(0.0), 0.0));
        assert_eq!(d.flags, vec!["unmatched_features"]);
        assert_eq!(engine_naive_bayes(&[9.0, 9.0], 0.0, &s).unwrap().total, 0.0);
    }
}
