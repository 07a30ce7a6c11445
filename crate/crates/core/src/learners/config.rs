use serde::{Deserialize, Serialize};

use super::dataset::LabelKind;
use super::decision::Decision;
use super::kmeans::{kmeans_decision, KmeansConfig};
use super::knn::{ada_knn_predict, hoeffding_knn_predict, knn_predict, AdaRule};
use super::linkage::{linkage_decision, Linkage};
use super::naive_bayes::naive_bayes_predict;
use super::ridge::ridge_train;
use super::svm::{svm_train, Schedule};
use super::svr::{svr_train, Basis};
use super::tree::{tree_decision, TreeConfig};
use crate::error::{Error, Result};
use crate::io::Dataset;

/// A learner and its hyperparameters, e.g.
/// `{"name": "knn", "params": {"k": 3}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case")]
pub enum LearnerConfig {
    Knn {
        k: usize,
    },
    AdaKnn {
        k0: usize,
        delta: f64,
        c1: f64,
        #[serde(default)]
        rule: AdaRule,
    },
    HoeffdingKnn {
        k0: usize,
    },
    Linkage {
        linkage: Linkage,
        clusters: usize,
    },
    Kmeans(KmeansConfig),
    Tree(TreeConfig),
    NaiveBayes,
    Svm {
        alpha: f64,
        #[serde(default)]
        schedule: Schedule,
    },
    Svr {
        epsilon: f64,
        lambda: f64,
        #[serde(default)]
        basis: Basis,
        #[serde(default)]
        schedule: Schedule,
    },
    Ridge {
        alpha: f64,
    },
}

impl LearnerConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn name(&self) -> &'static str {
        match self {
            LearnerConfig::Knn { .. } => "knn",
            LearnerConfig::AdaKnn { .. } => "ada-knn",
            LearnerConfig::HoeffdingKnn { .. } => "hoeffding-knn",
            LearnerConfig::Linkage { .. } => "linkage",
            LearnerConfig::Kmeans(_) => "kmeans",
            LearnerConfig::Tree(_) => "tree",
            LearnerConfig::NaiveBayes => "naive-bayes",
            LearnerConfig::Svm { .. } => "svm",
            LearnerConfig::Svr { .. } => "svr",
            LearnerConfig::Ridge { .. } => "ridge",
        }
    }

    /// Learners that classify a single query point.
    pub fn needs_query(&self) -> bool {
        matches!(
            self,
            LearnerConfig::Knn { .. }
                | LearnerConfig::AdaKnn { .. }
                | LearnerConfig::HoeffdingKnn { .. }
                | LearnerConfig::NaiveBayes
        )
    }

    fn label_kind(&self) -> LabelKind {
        match self {
            LearnerConfig::Knn { .. }
            | LearnerConfig::AdaKnn { .. }
            | LearnerConfig::HoeffdingKnn { .. }
            | LearnerConfig::NaiveBayes => LabelKind::Binary01,
            LearnerConfig::Tree(_) => LabelKind::OrdinalFeaturesBinaryLabel,
            LearnerConfig::Svm { .. } => LabelKind::BinaryPm1,
            _ => LabelKind::Real,
        }
    }

    /// Trains on the observation rows of `data`; `query` is required by
    /// [`LearnerConfig::needs_query`] learners and ignored by the rest.
    pub fn run(&self, data: &Dataset, query: Option<&[f64]>, seed: u64) -> Result<Decision> {
        let s = data.labeled(self.label_kind())?;
        let q = || {
            query.ok_or_else(|| Error::config(format!("learner {} needs a query point", self.name())))
        };
        match self {
            LearnerConfig::Knn { k } => knn_predict(q()?, &s, *k),
            LearnerConfig::AdaKnn { k0, delta, c1, rule } => ada_knn_predict(q()?, &s, *k0, *delta, *c1, *rule),
            LearnerConfig::HoeffdingKnn { k0 } => hoeffding_knn_predict(q()?, &s, *k0),
            LearnerConfig::NaiveBayes => naive_bayes_predict(q()?, &s),
            LearnerConfig::Linkage { linkage, clusters } => linkage_decision(s.points(), *linkage, *clusters),
            LearnerConfig::Kmeans(cfg) => kmeans_decision(s.points(), cfg, seed),
            LearnerConfig::Tree(cfg) => tree_decision(&s, cfg),
            LearnerConfig::Svm { alpha, schedule } => svm_train(&s, *alpha, schedule),
            LearnerConfig::Svr {
                epsilon,
                lambda,
                basis,
                schedule,
            } => svr_train(&s, *epsilon, *lambda, basis, schedule),
            LearnerConfig::Ridge { alpha } => ridge_train(&s, *alpha),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_dataset;

    #[test]
    fn parses_and_runs() {
        let cfg = LearnerConfig::from_json(r#"{"name":"knn","params":{"k":3}}"#).unwrap();
        assert_eq!(cfg, LearnerConfig::Knn { k: 3 });
        let data = parse_dataset("x1,y\n0,1\n1,1\n2,0\n10,0\n").unwrap();
        let d = cfg.run(&data, Some(&[0.5]), 0).unwrap();
        assert_eq!(d.label(), Some(1.0));
        assert!(cfg.run(&data, None, 0).is_err());
        let km = LearnerConfig::from_json(r#"{"name":"kmeans","params":{"k":2}}"#).unwrap();
        assert!(km.run(&data, None, 0).is_ok());
        assert!(LearnerConfig::from_json(r#"{"name":"perceptron"}"#).is_err());
        let bad = parse_dataset("x1,y\n0,2\n").unwrap();
        assert!(cfg.run(&bad, Some(&[0.0]), 0).unwrap_err().is_schema_error());
    }
}
