//! The incongruity theories whose totals the learners minimize.

use crate::aggregation::{ProperAggregator, ReductionMode, TotalAggregator};
use crate::error::Result;
use crate::formula::{Formula, FormulaSet, Metric, MetricDef, Modality};
use crate::theory::{
    Aspect, Condition, DeviationFn, HypothesisSpec, Incongruity, PairArg, Regularization, TheoryDocument,
};

use super::dataset::LabeledDataset;
use super::linkage::Linkage;

fn pointwise(name: &str, y_metric: Metric, deviation: DeviationFn) -> TheoryDocument {
    TheoryDocument {
        name: name.to_string(),
        x_metric: Metric::Euclidean,
        y_metric,
        aspects: vec![Aspect::new(Condition::pointwise(), deviation, ProperAggregator::MEAN)],
        regularization: Regularization::None,
        top: TotalAggregator::Passthrough,
    }
}

/// Mean absolute error; on 0/1 labels and constant 0/1 hypotheses, the error
/// rate. Used by ERM, the k-NN family and decision-tree leaves.
pub fn erm_theory() -> TheoryDocument {
    pointwise("erm", Metric::Absolute, DeviationFn::RhoY)
}

/// Mean of `ln |y - f(x)|`, clamped below at `floor`.
pub fn logistic_theory(floor: f64) -> TheoryDocument {
    pointwise("logistic", Metric::Absolute, DeviationFn::LogRhoY { floor })
}

/// Sign-disagreement deviations, averaged, plus `alpha ||w||^2`.
pub fn svm_theory(alpha: f64) -> TheoryDocument {
    TheoryDocument {
        regularization: Regularization::SquaredWeightNorm { alpha },
        top: TotalAggregator::Sum,
        ..pointwise("svm", Metric::SignAgreement, DeviationFn::RhoY)
    }
}

/// Epsilon-insensitive deviations, summed, plus `lambda ||w||^2`.
pub fn svr_theory(epsilon: f64, lambda: f64) -> TheoryDocument {
    TheoryDocument {
        regularization: Regularization::SquaredWeightNorm { alpha: lambda },
        top: TotalAggregator::CountWeightedSum { weights: vec![1.0, 1.0] },
        ..pointwise("svr", Metric::EpsilonInsensitive { epsilon }, DeviationFn::RhoY)
    }
}

/// Mean squared error plus `alpha ||w||^2`.
pub fn ridge_theory(alpha: f64) -> TheoryDocument {
    TheoryDocument {
        regularization: Regularization::SquaredWeightNorm { alpha },
        top: TotalAggregator::Sum,
        ..pointwise("ridge", Metric::Absolute, DeviationFn::RhoYSquared)
    }
}

/// One aspect per feature: the hypothetical class at the query collides with
/// every observation sharing that feature's value.
pub fn naive_bayes_theory(x_dim: usize) -> TheoryDocument {
    let aspects = (1..=x_dim)
        .map(|i| {
            Aspect::new(
                Condition::And(vec![
                    Condition::modality_is(PairArg::First, Modality::hypothetical(0)),
                    Condition::modality_is(PairArg::Second, Modality::observation(0)),
                    Condition::CoordEqual(i),
                ]),
                DeviationFn::RhoY,
                ProperAggregator::MEAN,
            )
        })
        .collect();
    TheoryDocument {
        name: "naive_bayes".to_string(),
        x_metric: Metric::Euclidean,
        y_metric: Metric::Absolute,
        aspects,
        regularization: Regularization::None,
        top: TotalAggregator::OneMinusProductOfComplements,
    }
}

/// Distances between the points of two clusters, aggregated by the linkage.
/// The first cluster is the hypothetical side, the second the observed side;
/// both sit at the same cluster index.
pub fn linkage_theory(linkage: Linkage) -> TheoryDocument {
    TheoryDocument {
        name: format!("linkage_{}", linkage.name()),
        x_metric: Metric::Euclidean,
        y_metric: Metric::Euclidean,
        aspects: vec![Aspect::new(Condition::pointwise(), DeviationFn::RhoY, linkage.aggregator())],
        regularization: Regularization::None,
        top: TotalAggregator::Passthrough,
    }
}

/// Squared distances between points of the same cluster, every ordered pair
/// counted, halved.
pub fn kmeans_theory() -> TheoryDocument {
    let hyp = Modality::hypothetical(0);
    TheoryDocument {
        name: "kmeans".to_string(),
        x_metric: Metric::Euclidean,
        y_metric: Metric::Euclidean,
        aspects: vec![Aspect::new(
            Condition::And(vec![
                Condition::modality_is(PairArg::First, hyp),
                Condition::modality_is(PairArg::Second, hyp),
                Condition::XEqual,
            ]),
            DeviationFn::RhoYSquared,
            ProperAggregator::MEAN,
        )],
        regularization: Regularization::None,
        top: TotalAggregator::CountWeightedSum { weights: vec![0.5] },
    }
}

/// Evaluates a point-wise theory on a training set.
pub fn engine_pointwise(doc: &TheoryDocument, h: &HypothesisSpec, s: &LabeledDataset) -> Result<Incongruity> {
    let obs = s.observations(doc.x_metric.clone(), doc.y_metric.clone())?;
    doc.evaluate(h, &obs, ReductionMode::BitExact)
}

/// Naive Bayes loss of class `c` at query `z`.
pub fn engine_naive_bayes(z: &[f64], c: f64, s: &LabeledDataset) -> Result<Incongruity> {
    let doc = naive_bayes_theory(s.x_dim());
    let obs = s.observations(doc.x_metric.clone(), doc.y_metric.clone())?;
    let h = HypothesisSpec::instances(vec![Formula::new(Modality::hypothetical(0), z.to_vec(), c)]);
    doc.evaluate(&h, &obs, ReductionMode::BitExact)
}

fn point_formulas(points: &[Vec<f64>], members: &[usize], modality: Modality, cluster: f64) -> Vec<Formula> {
    members
        .iter()
        .map(|&i| Formula::new(modality, vec![cluster], points[i].clone()))
        .collect()
}

/// Linkage loss of merging clusters `a` and `b` (lists of row indices).
pub fn engine_linkage(points: &[Vec<f64>], a: &[usize], b: &[usize], linkage: Linkage) -> Result<Incongruity> {
    let doc = linkage_theory(linkage);
    let obs = FormulaSet::with_formulas(
        1,
        MetricDef::x(doc.x_metric.clone()),
        MetricDef::y(doc.y_metric.clone()),
        point_formulas(points, b, Modality::observation(0), 0.0),
    )?;
    let h = HypothesisSpec::instances(point_formulas(points, a, Modality::hypothetical(0), 0.0));
    doc.evaluate(&h, &obs, ReductionMode::BitExact)
}

/// Within-cluster loss of a partition, clusters given as row indices.
pub fn engine_kmeans(points: &[Vec<f64>], clusters: &[Vec<usize>]) -> Result<Incongruity> {
    let doc = kmeans_theory();
    let obs = doc.formula_set(1)?;
    let instances = clusters
        .iter()
        .enumerate()
        .flat_map(|(k, members)| point_formulas(points, members, Modality::hypothetical(0), k as f64))
        .collect();
    doc.evaluate(&HypothesisSpec::instances(instances), &obs, ReductionMode::BitExact)
}

/// Registered theory names and their documents, for listing and loading by
/// name. Parameterized theories use representative parameters.
pub fn registered_theories() -> Vec<TheoryDocument> {
    vec![
        erm_theory(),
        logistic_theory(crate::theory::DEFAULT_LOG_FLOOR),
        svm_theory(0.0),
        svr_theory(0.0, 0.0),
        ridge_theory(0.0),
        linkage_theory(Linkage::Single),
        linkage_theory(Linkage::Average),
        linkage_theory(Linkage::Max),
        kmeans_theory(),
    ]
}

pub fn registered_theory(name: &str) -> Option<TheoryDocument> {
    registered_theories().into_iter().find(|t| t.name == name)
}
