//! Agglomerative clustering that repeatedly merges the two clusters with the
//! smallest linkage loss.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::decision::{Decision, Outcome, TraceStep};
use crate::aggregation::ProperAggregator;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linkage {
    /// Minimum cross-cluster distance.
    Single,
    /// Mean cross-cluster distance.
    Average,
    /// Maximum cross-cluster distance.
    Max,
}

impl Linkage {
    pub fn name(self) -> &'static str {
        match self {
            Linkage::Single => "single",
            Linkage::Average => "average",
            Linkage::Max => "max",
        }
    }

    /// The proper aggregator applied to the cross-cluster distances.
    pub fn aggregator(self) -> ProperAggregator {
        match self {
            Linkage::Single => ProperAggregator::MIN,
            Linkage::Average => ProperAggregator::MEAN,
            Linkage::Max => ProperAggregator::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MergeStep {
    pub i: usize,
    pub j: usize,
    pub loss: f64,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Linkage loss between two clusters of row indices.
pub fn linkage_loss(points: &[Vec<f64>], a: &[usize], b: &[usize], linkage: Linkage) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::empty("linkage between an empty cluster"));
    }
    let dists = a.iter().flat_map(|&i| b.iter().map(move |&j| distance(&points[i], &points[j])));
    Ok(match linkage {
        Linkage::Single => dists.fold(f64::INFINITY, f64::min),
        Linkage::Max => dists.fold(f64::NEG_INFINITY, f64::max),
        Linkage::Average => dists.sum::<f64>() / (a.len() * b.len()) as f64,
    })
}

fn check_points(points: &[Vec<f64>]) -> Result<()> {
    let Some(first) = points.first() else {
        return Err(Error::empty("no points to cluster"));
    };
    if let Some(p) = points.iter().find(|p| p.len() != first.len()) {
        return Err(Error::DimensionMismatch {
            expected: first.len(),
            found: p.len(),
        });
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::domain("points must be finite"));
    }
    Ok(())
}

/// The pair `i < j` of clusters with the smallest linkage loss, ties to the
/// lexicographically smallest pair.
pub fn linkage_merge_step(points: &[Vec<f64>], clusters: &[Vec<usize>], linkage: Linkage) -> Result<MergeStep> {
    if clusters.len() < 2 {
        return Err(Error::config("a merge step needs at least two clusters"));
    }
    if let Some(i) = clusters.iter().flatten().find(|i| **i >= points.len()) {
        return Err(Error::config(format!("row index {i} out of range")));
    }
    let mut best: Option<MergeStep> = None;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let loss = linkage_loss(points, &clusters[i], &clusters[j], linkage)?;
            if best.as_ref().is_none_or(|b| loss < b.loss) {
                best = Some(MergeStep { i, j, loss });
            }
        }
    }
    Ok(best.expect("at least one pair"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MergeRecord {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub loss: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dendrogram {
    pub merges: Vec<MergeRecord>,
    pub partition: Vec<Vec<usize>>,
}

/// Merges from singletons until `stop` clusters remain.
pub fn linkage_cluster(points: &[Vec<f64>], linkage: Linkage, stop: usize) -> Result<Dendrogram> {
    check_points(points)?;
    if stop == 0 {
        return Err(Error::config("the target cluster count must be >= 1"));
    }
    let mut clusters: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    let mut merges = Vec::new();
    while clusters.len() > stop {
        let step = linkage_merge_step(points, &clusters, linkage)?;
        let right = clusters.remove(step.j);
        let left = clusters[step.i].clone();
        clusters[step.i].extend(&right);
        clusters[step.i].sort_unstable();
        merges.push(MergeRecord {
            left,
            right,
            loss: step.loss,
        });
    }
    Ok(Dendrogram {
        merges,
        partition: clusters,
    })
}

/// [`linkage_cluster`] as a decision; the loss is that of the last merge.
pub fn linkage_decision(points: &[Vec<f64>], linkage: Linkage, stop: usize) -> Result<Decision> {
    let dendrogram = linkage_cluster(points, linkage, stop)?;
    let loss = dendrogram.merges.last().map_or(0.0, |m| m.loss);
    let mut d = Decision::new(
        Outcome::Partition {
            clusters: dendrogram.partition.clone(),
        },
        loss,
        &format!("linkage_{}", linkage.name()),
    );
    d.trace = dendrogram
        .merges
        .iter()
        .map(|m| TraceStep::new("optimal_selection", json!({"left": m.left, "right": m.right}), Some(m.loss)))
        .collect();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::engine_linkage;

    fn pts(xs: &[f64]) -> Vec<Vec<f64>> {
        xs.iter().map(|x| vec![*x]).collect()
    }

    #[test]
    fn merge_step_examples() {
        let p = pts(&[0.0, 1.0, 3.0]);
        let s = linkage_merge_step(&p, &[vec![0], vec![1], vec![2]], Linkage::Single).unwrap();
        assert_eq!(s, MergeStep { i: 0, j: 1, loss: 1.0 });
        let p = pts(&[0.0, 2.0, 5.0]);
        let c = [vec![0, 1], vec![2]];
        assert_eq!(linkage_merge_step(&p, &c, Linkage::Average).unwrap().loss, 4.0);
        assert_eq!(linkage_merge_step(&p, &c, Linkage::Max).unwrap().loss, 5.0);
        assert_eq!(engine_linkage(&p, &c[0], &c[1], Linkage::Average).unwrap().total, 4.0);
        assert_eq!(engine_linkage(&p, &c[0], &c[1], Linkage::Single).unwrap().total, 3.0);
        assert!(linkage_merge_step(&p, &[vec![0, 1, 2]], Linkage::Single).is_err());
    }

    #[test]
    fn clustering_examples() {
        let d = linkage_cluster(&pts(&[0.0, 1.0, 10.0]), Linkage::Single, 2).unwrap();
        assert_eq!(d.partition, vec![vec![0, 1], vec![2]]);
        let d = linkage_cluster(&pts(&[4.0]), Linkage::Max, 1).unwrap();
        assert!(d.merges.is_empty());
        assert_eq!(d.partition, vec![vec![0]]);
        assert!(linkage_cluster(&[], Linkage::Max, 1).is_err());
    }
}
