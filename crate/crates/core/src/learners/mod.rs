//! Learners expressed as minimizers of total incongruity.
//!
//! Each learner computes its loss directly; [`theories`] holds the theory
//! whose engine-evaluated total incongruity equals that loss.

mod config;
mod dataset;
mod decision;
mod erm;
pub mod kmeans;
pub mod knn;
pub mod linkage;
mod logistic;
mod naive_bayes;
mod ridge;
pub mod svm;
pub mod svr;
pub mod theories;
pub mod tree;

pub use config::LearnerConfig;
pub use dataset::{LabelKind, LabeledDataset};
pub use decision::{Decision, Outcome, TraceStep};
pub use erm::erm_loss;
pub use kmeans::{kmeans_assign_point, kmeans_run, kmeans_within_loss, AssignmentRule, KmeansConfig, WithinLoss};
pub use knn::{ada_knn_predict, ada_threshold, hoeffding_knn_predict, hoeffding_weight, knn_predict, AdaRule};
pub use linkage::{linkage_cluster, linkage_merge_step, Linkage};
pub use logistic::{logistic_loss, sigmoid, sigmoid_hypothesis};
pub use naive_bayes::{naive_bayes_loss, naive_bayes_predict};
pub use ridge::{ridge_fit, ridge_loss, ridge_train};
pub use svm::{normalize_to_fprime, svm_loss, svm_min_slack_sum, svm_train, Schedule};
pub use svr::{kernel_transform, svr_loss, svr_train, Basis};
pub use theories::*;
pub use tree::{tree_decision, tree_predict, tree_train, Tree, TreeConfig};
