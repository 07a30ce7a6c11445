use serde::{Deserialize, Serialize};

use super::engine::evaluate;
use super::records::ScaleReading;
use crate::aggregation::{ProperAggregator, TotalAggregator};
use crate::error::{Error, Result};
use crate::formula::{Formula, Metric, Modality};
use crate::theory::{Aspect, Condition, DeviationFn, PairArg, Regularization, TheoryDocument};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalesConfig {
    /// Readings at most this many minutes apart are compared.
    pub window: f64,
    /// Weight differences below this many pounds are ignored.
    pub tol: f64,
    pub aggregator: ProperAggregator,
}

impl Default for ScalesConfig {
    fn default() -> Self {
        ScalesConfig {
            window: 5.0,
            tol: 1.0,
            aggregator: ProperAggregator::Percentile(80.0),
        }
    }
}

/// Readings of scale 1 collide with readings of scale 2 taken within the
/// window; the deviation is the weight difference beyond the tolerance.
pub fn scales_theory(cfg: &ScalesConfig) -> TheoryDocument {
    TheoryDocument {
        name: "scales".to_string(),
        x_metric: Metric::Absolute,
        y_metric: Metric::Absolute,
        aspects: vec![Aspect::new(
            Condition::And(vec![
                Condition::modality_is(PairArg::First, Modality::observation(1)),
                Condition::modality_is(PairArg::Second, Modality::observation(2)),
                Condition::XDistLeq(cfg.window),
            ]),
            DeviationFn::HingeAbove { c: cfg.tol },
            cfg.aggregator.clone(),
        )],
        regularization: Regularization::None,
        top: TotalAggregator::Passthrough,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalePair {
    /// Row of the scale-1 reading.
    pub first: usize,
    /// Row of the scale-2 reading.
    pub second: usize,
    pub minutes_apart: f64,
    pub weight_difference: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalesReport {
    pub aggregator: String,
    /// Aggregated deviation; 0 with `no_collisions` when no readings pair up.
    pub incongruity: f64,
    pub no_collisions: bool,
    pub max_deviation: f64,
    /// Colliding pairs, largest deviation first.
    pub pairs: Vec<ScalePair>,
}

pub fn scales_report(readings: &[ScaleReading], cfg: &ScalesConfig) -> Result<ScalesReport> {
    if !(cfg.window >= 0.0 && cfg.tol >= 0.0) {
        return Err(Error::config("window and tolerance must be >= 0"));
    }
    let doc = scales_theory(cfg);
    doc.validate()?;
    let mut set = doc.formula_set(1)?;
    for r in readings {
        if r.scale_id != 1 && r.scale_id != 2 {
            return Err(Error::config(format!("scale id {} is not 1 or 2", r.scale_id)));
        }
        set.push(Formula::new(Modality::observation(r.scale_id.into()), vec![r.time], r.weight))?;
    }
    let eval = evaluate(&doc, &set, Vec::new())?;
    let mut pairs: Vec<ScalePair> = eval.pairs[0]
        .iter()
        .map(|(p, dev)| {
            let (a, b) = (&readings[p.first], &readings[p.second]);
            ScalePair {
                first: p.first,
                second: p.second,
                minutes_apart: (a.time - b.time).abs(),
                weight_difference: (a.weight - b.weight).abs(),
                deviation: *dev,
            }
        })
        .collect();
    pairs.sort_by(|a, b| b.deviation.total_cmp(&a.deviation));
    let aspect = &eval.incongruity.aspects[0];
    Ok(ScalesReport {
        aggregator: crate::aggregation::Aggregate::label(&cfg.aggregator),
        incongruity: eval.incongruity.total,
        no_collisions: aspect.no_collisions,
        max_deviation: pairs.first().map_or(0.0, |p| p.deviation),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(scale_id: u8, time: f64, weight: f64) -> ScaleReading {
        ScaleReading { scale_id, time, weight }
    }

    #[test]
    fn worked_deviations() {
        let rep = scales_report(&[r(1, 0.0, 180.4), r(2, 3.0, 181.0)], &ScalesConfig::default()).unwrap();
        assert_eq!(rep.pairs.len(), 1);
        assert_eq!(rep.pairs[0].deviation, 0.0);
        let rep = scales_report(&[r(1, 0.0, 180.0), r(2, 5.0, 182.0)], &ScalesConfig::default()).unwrap();
        assert_eq!(rep.pairs[0].deviation, 1.0);
        assert_eq!(rep.incongruity, 1.0);
        let rep = scales_report(&[r(1, 0.0, 180.0), r(2, 6.0, 182.0)], &ScalesConfig::default()).unwrap();
        assert!(rep.pairs.is_empty() && rep.no_collisions);
    }

    #[test]
    fn percentile_and_max() {
        let readings = [
            r(1, 0.0, 180.0),
            r(2, 1.0, 180.5),
            r(1, 100.0, 180.0),
            r(2, 101.0, 183.0),
            r(1, 200.0, 181.0),
            r(2, 200.0, 181.0),
        ];
        let rep = scales_report(&readings, &ScalesConfig::default()).unwrap();
        assert_eq!(rep.pairs.len(), 3);
        assert_eq!(rep.incongruity, 2.0);
        assert_eq!(rep.max_deviation, 2.0);
        assert_eq!(rep.pairs[0].first, 2);
    }
}
