//! Decision trees over ordinal features with binary labels.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use super::knn::ConstantFit;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// Nodes with fewer rows become leaves.
    pub leaf_min_count: usize,
    /// Nodes whose prevalent class share exceeds this become leaves.
    pub leaf_purity: f64,
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.leaf_min_count == 0 {
            return Err(Error::config("leaf_min_count must be >= 1"));
        }
        if !(self.leaf_purity > 0.5 && self.leaf_purity <= 1.0) {
            return Err(Error::config(format!("leaf_purity must lie in (0.5, 1], got {}", self.leaf_purity)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        label: f64,
        count: usize,
        errors: usize,
    },
    /// Rows with `x[feature - 1] <= cut` go left.
    Split {
        feature: usize,
        cut: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tree {
    pub root: TreeNode,
    /// Training values of each feature; queries outside them have no
    /// decision.
    pub domain: Vec<Vec<f64>>,
}

impl Tree {
    /// Leaf label for `x`, or `None` when `x` lies outside every leaf's
    /// subdomain.
    pub fn predict(&self, x: &[f64]) -> Option<f64> {
        if x.len() != self.domain.len() {
            return None;
        }
        if x.iter().zip(&self.domain).any(|(v, values)| !values.contains(v)) {
            return None;
        }
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { label, .. } => return Some(*label),
                TreeNode::Split { feature, cut, left, right } => {
                    node = if x[feature - 1] <= *cut { left } else { right };
                }
            }
        }
    }

    pub fn leaves(&self) -> usize {
        fn count(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf { .. } => 1,
                TreeNode::Split { left, right, .. } => count(left) + count(right),
            }
        }
        count(&self.root)
    }

    /// Misclassified training rows summed over the leaves.
    pub fn training_errors(&self) -> usize {
        fn count(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf { errors, .. } => *errors,
                TreeNode::Split { left, right, .. } => count(left) + count(right),
            }
        }
        count(&self.root)
    }
}

fn misclassified(s: &LabeledDataset, rows: &[usize]) -> usize {
    let ones = rows.iter().filter(|&&i| s.y(i) == 1.0).count();
    ones.min(rows.len() - ones)
}

fn best_split(s: &LabeledDataset, rows: &[usize]) -> Option<(usize, f64, usize)> {
    let mut best: Option<(usize, f64, usize)> = None;
    for f in 0..s.x_dim() {
        let mut values: Vec<f64> = rows.iter().map(|&i| s.x(i)[f]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for &cut in &values[..values.len().saturating_sub(1)] {
            let (l, r): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&i| s.x(i)[f] <= cut);
            let score = misclassified(s, &l) + misclassified(s, &r);
            if best.is_none_or(|(_, _, b)| score < b) {
                best = Some((f, cut, score));
            }
        }
    }
    best
}

fn grow(s: &LabeledDataset, rows: &[usize], cfg: &TreeConfig, path: &str, trace: &mut Vec<TraceStep>) -> TreeNode {
    let fit = ConstantFit::of(rows.iter().map(|&i| s.y(i)));
    trace.push(TraceStep::new("focusing", json!({"node": path, "count": rows.len()}), None));
    trace.push(TraceStep::new(
        "fitting",
        json!({"node": path, "error_0": fit.error_0, "error_1": fit.error_1}),
        Some(fit.error),
    ));
    let share = fit.prevalence();
    let split = if rows.len() < cfg.leaf_min_count || share > cfg.leaf_purity || share == 1.0 {
        None
    } else {
        best_split(s, rows)
    };
    match split {
        None => {
            trace.push(TraceStep::new("optimal_selection", json!({"node": path, "label": fit.label}), Some(fit.error)));
            TreeNode::Leaf {
                label: fit.label,
                count: rows.len(),
                errors: misclassified(s, rows),
            }
        }
        Some((f, cut, _)) => {
            trace.push(TraceStep::new(
                "generating_parameters",
                json!({"node": path, "feature": f + 1, "cut": cut}),
                None,
            ));
            let (l, r): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&i| s.x(i)[f] <= cut);
            TreeNode::Split {
                feature: f + 1,
                cut,
                left: Box::new(grow(s, &l, cfg, &format!("{path}L"), trace)),
                right: Box::new(grow(s, &r, cfg, &format!("{path}R"), trace)),
            }
        }
    }
}

fn train(s: &LabeledDataset, cfg: &TreeConfig) -> Result<(Tree, Vec<TraceStep>)> {
    cfg.validate()?;
    s.require_nonempty()?;
    s.require_kind(&[LabelKind::OrdinalFeaturesBinaryLabel, LabelKind::Binary01])?;
    let rows: Vec<usize> = (0..s.len()).collect();
    let mut trace = Vec::new();
    let root = grow(s, &rows, cfg, "root:", &mut trace);
    let domain = (0..s.x_dim())
        .map(|f| {
            let mut v: Vec<f64> = s.points().iter().map(|p| p[f]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    Ok((Tree { root, domain }, trace))
}

/// Splits subdomains greedily by the (feature, cut) pair with the fewest
/// misclassified rows in the two children; ties to the smallest feature, then
/// the smallest cut.
pub fn tree_train(s: &LabeledDataset, cfg: &TreeConfig) -> Result<Tree> {
    train(s, cfg).map(|(t, _)| t)
}

/// [`tree_train`] as a decision whose loss is the training error rate.
pub fn tree_decision(s: &LabeledDataset, cfg: &TreeConfig) -> Result<Decision> {
    let (tree, trace) = train(s, cfg)?;
    let loss = tree.training_errors() as f64 / s.len() as f64;
    let mut d = Decision::new(Outcome::Tree { tree }, loss, "erm");
    d.trace = trace;
    Ok(d)
}

/// Classifies `x` with a trained tree.
pub fn tree_predict(tree: &Tree, x: &[f64]) -> Decision {
    match tree.predict(x) {
        Some(label) => Decision::new(Outcome::Label { label }, 0.0, "erm"),
        None => {
            let mut d = Decision::new(Outcome::Undefined, 0.0, "erm");
            d.abstained = true;
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{engine_pointwise, erm_theory};
    use crate::theory::HypothesisSpec;

    fn ds(x: &[[f64; 2]], y: &[f64]) -> LabeledDataset {
        LabeledDataset::new(2, x.iter().map(|r| r.to_vec()).collect(), y.to_vec(), LabelKind::OrdinalFeaturesBinaryLabel)
            .unwrap()
    }

    const CFG: TreeConfig = TreeConfig {
        leaf_min_count: 1,
        leaf_purity: 1.0,
    };

    #[test]
    fn pure_labels_give_one_leaf() {
        let s = ds(&[[0.0, 0.0], [1.0, 2.0]], &[1.0, 1.0]);
        let t = tree_train(&s, &CFG).unwrap();
        assert_eq!(t.root, TreeNode::Leaf { label: 1.0, count: 2, errors: 0 });
    }

    #[test]
    fn xor_gives_four_leaves() {
        let s = ds(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]], &[0.0, 1.0, 1.0, 0.0]);
        let d = tree_decision(&s, &CFG).unwrap();
        let Outcome::Tree { tree } = &d.outcome else { panic!() };
        assert_eq!(tree.leaves(), 4);
        assert_eq!(d.loss, 0.0);
        let TreeNode::Split { feature, .. } = tree.root else { panic!() };
        assert_eq!(feature, 1);
        let t = tree.clone();
        let h = HypothesisSpec::function("tree", move |x| t.predict(x).unwrap().into());
        assert_eq!(engine_pointwise(&erm_theory(), &h, &s).unwrap().total, d.loss);
    }

    #[test]
    fn unseen_value_is_undefined() {
        let s = ds(&[[0.0, 0.0], [1.0, 1.0]], &[0.0, 1.0]);
        let t = tree_train(&s, &CFG).unwrap();
        assert_eq!(t.predict(&[1.0, 1.0]), Some(1.0));
        assert_eq!(t.predict(&[0.5, 1.0]), None);
        assert!(tree_predict(&t, &[2.0, 0.0]).abstained);
    }

    #[test]
    fn leaf_rules() {
        let s = ds(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], &[0.0, 0.0, 1.0]);
        let big_n = TreeConfig { leaf_min_count: 4, leaf_purity: 1.0 };
        assert_eq!(tree_train(&s, &big_n).unwrap().leaves(), 1);
        let loose = TreeConfig { leaf_min_count: 1, leaf_purity: 0.6 };
        assert_eq!(tree_train(&s, &loose).unwrap().leaves(), 1);
        assert!(TreeConfig { leaf_min_count: 1, leaf_purity: 0.5 }.validate().is_err());
    }
}
