use serde::{Deserialize, Serialize};

use super::engine::evaluate;
use super::records::DailyLog;
use crate::aggregation::{ProperAggregator, TotalAggregator};
use crate::error::{Error, Result};
use crate::formula::{Formula, Metric, Modality};
use crate::theory::{Aspect, Condition, DeviationFn, Regularization, TheoryDocument};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DependenceConfig {
    /// Calorie differences above this count as a real change in intake.
    pub x_gap: f64,
    /// Weight differences up to this many pounds are noise.
    pub y_tol: f64,
    /// Also require weight to grow with intake; otherwise only days with
    /// similar intake are compared.
    pub monotone: bool,
}

impl Default for DependenceConfig {
    fn default() -> Self {
        DependenceConfig {
            x_gap: 100.0,
            y_tol: 1.0,
            monotone: true,
        }
    }
}

/// Weight should depend on calories: similar intake gives similar weight and,
/// when monotone, more intake never gives less weight.
pub fn dependence_theory(cfg: &DependenceConfig) -> TheoryDocument {
    let aspect = |c| Aspect::new(c, DeviationFn::HingeAbove { c: cfg.y_tol }, ProperAggregator::MEAN);
    let mut aspects = Vec::new();
    if cfg.monotone {
        aspects.push(aspect(Condition::And(vec![
            Condition::XLess,
            Condition::YGreater,
            Condition::XDistGt(cfg.x_gap),
        ])));
    }
    aspects.push(aspect(Condition::And(vec![
        Condition::YGreater,
        Condition::XDistLt(cfg.x_gap),
    ])));
    TheoryDocument {
        name: if cfg.monotone { "monotone_dependence" } else { "dependence" }.to_string(),
        x_metric: Metric::Absolute,
        y_metric: Metric::Absolute,
        aspects,
        regularization: Regularization::None,
        top: TotalAggregator::Sum,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DayPair {
    /// Row of the day with the larger weight.
    pub first: usize,
    pub second: usize,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AspectReport {
    pub name: &'static str,
    pub incongruity: f64,
    pub no_collisions: bool,
    /// Colliding pairs with a positive deviation, largest first.
    pub violations: Vec<DayPair>,
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DependenceReport {
    pub total: f64,
    pub aspects: Vec<AspectReport>,
}

pub fn monotone_dependence_report(logs: &[DailyLog], cfg: &DependenceConfig) -> Result<DependenceReport> {
    if !(cfg.x_gap >= 0.0 && cfg.y_tol >= 0.0) {
        return Err(Error::config("calorie gap and weight tolerance must be >= 0"));
    }
    let doc = dependence_theory(cfg);
    doc.validate()?;
    let mut set = doc.formula_set(1)?;
    for d in logs {
        set.push(Formula::new(Modality::observation(0), vec![d.calories], d.weight))?;
    }
    let eval = evaluate(&doc, &set, Vec::new())?;
    let names: &[&'static str] = if cfg.monotone {
        &["more_intake_less_weight", "similar_intake"]
    } else {
        &["similar_intake"]
    };
    let aspects = eval
        .pairs
        .iter()
        .zip(&eval.incongruity.aspects)
        .zip(names)
        .map(|((pairs, b), name)| {
            let mut violations: Vec<DayPair> = pairs
                .iter()
                .filter(|(_, d)| *d > 0.0)
                .map(|(p, d)| DayPair {
                    first: p.first,
                    second: p.second,
                    deviation: *d,
                })
                .collect();
            violations.sort_by(|a, b| b.deviation.total_cmp(&a.deviation));
            AspectReport {
                name,
                incongruity: b.incongruity,
                no_collisions: b.no_collisions,
                violations,
                pairs: b.pairs,
            }
        })
        .collect();
    Ok(DependenceReport {
        total: eval.incongruity.total,
        aspects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(day: i64, calories: f64, weight: f64) -> DailyLog {
        DailyLog { day, calories, weight }
    }

    fn hinge(v: f64) -> f64 {
        (v - 1.0).max(0.0)
    }

    fn oracle(logs: &[DailyLog], monotone: bool) -> f64 {
        let mut a1 = Vec::new();
        let mut a2 = Vec::new();
        for (i, p) in logs.iter().enumerate() {
            for (j, q) in logs.iter().enumerate() {
                if i == j || p.weight <= q.weight {
                    continue;
                }
                let gap = (p.calories - q.calories).abs();
                if p.calories < q.calories && gap > 100.0 {
                    a1.push(hinge(p.weight - q.weight));
                }
                if gap < 100.0 {
                    a2.push(hinge(p.weight - q.weight));
                }
            }
        }
        let mean = |v: &[f64]| if v.is_empty() { 0.0 } else { v.iter().sum::<f64>() / v.len() as f64 };
        if monotone { mean(&a1) + mean(&a2) } else { mean(&a2) }
    }

    #[test]
    fn eating_more_and_losing_weight() {
        let rep = monotone_dependence_report(&[d(1, 2000.0, 182.0), d(2, 2500.0, 180.0)], &DependenceConfig::default())
            .unwrap();
        assert_eq!(rep.aspects[0].violations.len(), 1);
        assert_eq!(rep.aspects[0].violations[0].deviation, 1.0);
        assert!(rep.aspects[1].no_collisions);
        assert_eq!(rep.total, 1.0);
    }

    #[test]
    fn matches_double_loop() {
        let logs: Vec<DailyLog> = (0..30)
            .map(|i| {
                let c = 1800.0 + ((i * 37) % 11) as f64 * 60.0;
                let w = 180.0 + ((i * 13) % 7) as f64 * 0.8 - c / 1000.0;
                d(i, c, w)
            })
            .collect();
        for monotone in [true, false] {
            let cfg = DependenceConfig { monotone, ..Default::default() };
            let rep = monotone_dependence_report(&logs, &cfg).unwrap();
            assert!((rep.total - oracle(&logs, monotone)).abs() < 1e-12);
            assert_eq!(rep.aspects.len(), if monotone { 2 } else { 1 });
        }
    }
}
