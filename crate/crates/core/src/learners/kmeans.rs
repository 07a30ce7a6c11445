//! K-means clustering and its within-cluster loss.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::decision::{Decision, Outcome, TraceStep};
use crate::error::{Error, Result};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn mean(points: &[Vec<f64>], members: &[usize]) -> Option<Vec<f64>> {
    let first = members.first()?;
    let mut m = vec![0.0; points[*first].len()];
    for &i in members {
        for (acc, v) in m.iter_mut().zip(&points[i]) {
            *acc += v;
        }
    }
    let n = members.len() as f64;
    Some(m.into_iter().map(|v| v / n).collect())
}

/// The two equal forms of the within-cluster loss.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WithinLoss {
    /// `1/2 sum_k sum_{a, b in C_k} |a - b|^2`.
    pub pairwise: f64,
    /// `sum_k |C_k| sum_{a in C_k} |a - mean_k|^2`.
    pub centroid: f64,
}

impl WithinLoss {
    pub fn relative_gap(&self) -> f64 {
        (self.pairwise - self.centroid).abs() / self.pairwise.abs().max(self.centroid.abs()).max(1.0)
    }
}

/// Groups row indices by cluster label; labels must be below `k`.
pub fn clusters_of(assignment: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
    let mut clusters = vec![Vec::new(); k];
    for (i, &c) in assignment.iter().enumerate() {
        clusters
            .get_mut(c)
            .ok_or_else(|| Error::config(format!("cluster label {c} out of range for {k} clusters")))?
            .push(i);
    }
    Ok(clusters)
}

/// Within-cluster loss of a partition given as lists of row indices. Empty
/// clusters contribute 0.
pub fn kmeans_within_loss(points: &[Vec<f64>], clusters: &[Vec<usize>]) -> Result<WithinLoss> {
    let mut seen = vec![false; points.len()];
    for &i in clusters.iter().flatten() {
        let slot = seen
            .get_mut(i)
            .ok_or_else(|| Error::config(format!("row index {i} out of range")))?;
        if *slot {
            return Err(Error::config(format!("row {i} is assigned twice")));
        }
        *slot = true;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::config(format!("row {i} is not assigned to a cluster")));
    }
    let (mut pairwise, mut centroid) = (0.0, 0.0);
    for members in clusters {
        let mut p = 0.0;
        for &a in members {
            for &b in members {
                p += sq_dist(&points[a], &points[b]);
            }
        }
        pairwise += 0.5 * p;
        if let Some(m) = mean(points, members) {
            let c: f64 = members.iter().map(|&a| sq_dist(&points[a], &m)).sum();
            centroid += members.len() as f64 * c;
        }
    }
    Ok(WithinLoss { pairwise, centroid })
}

/// How a single point picks its cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentRule {
    /// Cluster with the closest mean.
    #[default]
    ClosestMean,
    /// Cluster whose pairwise within-cluster loss grows least when the point
    /// joins it.
    PairwiseIncongruity,
}

/// Cluster for `x0` given the other points' clusters; ties to the lower
/// cluster index. Under the closest-mean rule empty clusters are skipped.
pub fn kmeans_assign_point(x0: &[f64], points: &[Vec<f64>], clusters: &[Vec<usize>], rule: AssignmentRule) -> Result<usize> {
    if clusters.is_empty() {
        return Err(Error::config("no clusters to assign to"));
    }
    let mut best: Option<(usize, f64)> = None;
    for (k, members) in clusters.iter().enumerate() {
        let score = match rule {
            AssignmentRule::ClosestMean => match mean(points, members) {
                Some(m) => sq_dist(x0, &m),
                None => continue,
            },
            AssignmentRule::PairwiseIncongruity => members.iter().map(|&i| sq_dist(x0, &points[i])).sum(),
        };
        if best.is_none_or(|(_, s)| score < s) {
            best = Some((k, score));
        }
    }
    best.map(|(k, _)| k)
        .ok_or_else(|| Error::empty("every cluster is empty"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PassLoss {
    pub pass: usize,
    pub pairwise: f64,
    pub sse: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KmeansRun {
    pub assignment: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
    /// Loss after initialization and after every pass.
    pub history: Vec<PassLoss>,
    pub capped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KmeansConfig {
    pub k: usize,
    #[serde(default)]
    pub rule: AssignmentRule,
    #[serde(default = "default_max_passes")]
    pub max_passes: usize,
}

fn default_max_passes() -> usize {
    100
}

impl KmeansConfig {
    pub fn new(k: usize) -> Self {
        KmeansConfig {
            k,
            rule: AssignmentRule::ClosestMean,
            max_passes: default_max_passes(),
        }
    }
}

fn sse(points: &[Vec<f64>], clusters: &[Vec<usize>]) -> f64 {
    clusters
        .iter()
        .filter_map(|members| {
            let m = mean(points, members)?;
            Some(members.iter().map(|&a| sq_dist(&points[a], &m)).sum::<f64>())
        })
        .sum()
}

/// Seeds `k` distinct rows (chosen by `seed`) as initial means, then repeats
/// passes until nothing moves or `max_passes` is reached.
///
/// Under the closest-mean rule a pass reassigns every point against the
/// means at the start of the pass, so the squared error to the means never
/// grows. Under the pairwise rule points move one at a time, so the pairwise
/// loss never grows.
pub fn kmeans_run(points: &[Vec<f64>], cfg: &KmeansConfig, seed: u64) -> Result<KmeansRun> {
    let n = points.len();
    if cfg.k == 0 || cfg.k > n {
        return Err(Error::config(format!("k must lie in 1..={n}, got {}", cfg.k)));
    }
    if cfg.max_passes == 0 {
        return Err(Error::config("the pass cap must be >= 1"));
    }
    let dim = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let seeds: Vec<Vec<usize>> = order[..cfg.k].iter().map(|&i| vec![i]).collect();
    let mut assignment = points
        .iter()
        .map(|p| kmeans_assign_point(p, points, &seeds, AssignmentRule::ClosestMean))
        .collect::<Result<Vec<_>>>()?;
    for (k, s) in seeds.iter().enumerate() {
        assignment[s[0]] = k;
    }
    let record = |pass: usize, assignment: &[usize]| -> Result<PassLoss> {
        let clusters = clusters_of(assignment, cfg.k)?;
        Ok(PassLoss {
            pass,
            pairwise: kmeans_within_loss(points, &clusters)?.pairwise,
            sse: sse(points, &clusters),
        })
    };
    let mut history = vec![record(0, &assignment)?];
    let mut capped = true;
    for pass in 1..=cfg.max_passes {
        let mut changed = false;
        match cfg.rule {
            AssignmentRule::ClosestMean => {
                let clusters = clusters_of(&assignment, cfg.k)?;
                let next = points
                    .iter()
                    .map(|p| kmeans_assign_point(p, points, &clusters, AssignmentRule::ClosestMean))
                    .collect::<Result<Vec<_>>>()?;
                changed = next != assignment;
                assignment = next;
            }
            AssignmentRule::PairwiseIncongruity => {
                for i in 0..n {
                    let mut clusters = clusters_of(&assignment, cfg.k)?;
                    clusters[assignment[i]].retain(|&j| j != i);
                    let k = kmeans_assign_point(&points[i], points, &clusters, AssignmentRule::PairwiseIncongruity)?;
                    if k != assignment[i] {
                        assignment[i] = k;
                        changed = true;
                    }
                }
            }
        }
        history.push(record(pass, &assignment)?);
        if !changed {
            capped = false;
            break;
        }
    }
    Ok(KmeansRun {
        clusters: clusters_of(&assignment, cfg.k)?,
        assignment,
        history,
        capped,
    })
}

/// [`kmeans_run`] as a decision whose loss is the pairwise within-cluster loss.
pub fn kmeans_decision(points: &[Vec<f64>], cfg: &KmeansConfig, seed: u64) -> Result<Decision> {
    let run = kmeans_run(points, cfg, seed)?;
    let loss = run.history.last().expect("initial entry").pairwise;
    let mut d = Decision::new(
        Outcome::Partition {
            clusters: run.clusters.clone(),
        },
        loss,
        "kmeans",
    );
    d.trace = run
        .history
        .iter()
        .map(|h| TraceStep::new("fitting", json!({"pass": h.pass, "sse": h.sse}), Some(h.pairwise)))
        .collect();
    if run.capped {
        d.flags.push("pass_cap_reached".to_string());
    }
    Ok(d)
}
