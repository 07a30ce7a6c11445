use proptest::prelude::*;

use loh::aggregation::recursive::{recursive_tot, recursive_tot_canonical, RecursiveAggregator};
use loh::aggregation::{median, percentile_agg, ProperAggregator, ReductionMode};
use loh::formula::{Formula, FormulaSet, Metric, MetricDef, Modality};
use loh::learners::{erm_loss, erm_theory, LabelKind, LabeledDataset};
use loh::scenarios::{scales_report, ScaleReading, ScalesConfig};
use loh::theory::{build_full_model, colliding_pairs, HypothesisSpec, LinearForm};

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 1..60)
}

fn positive() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3f64..1e3, 1..60)
}

proptest! {
    #[test]
    fn percentiles_stay_within_range(v in values(), p in 0f64..=100.0) {
        let q = percentile_agg(&v, p).unwrap();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(lo <= q && q <= hi);
        prop_assert!(p == 50.0 || v.contains(&q));
    }

    #[test]
    fn median_is_central(v in values()) {
        let m = median(&v).unwrap();
        let below = v.iter().filter(|x| **x < m).count();
        let above = v.iter().filter(|x| **x > m).count();
        prop_assert!(below <= v.len() / 2 && above <= v.len() / 2);
    }

    #[test]
    fn recursive_order_invariance(mut v in positive(), seed in any::<u64>()) {
        for r in RecursiveAggregator::ALL {
            let a = recursive_tot(&v, r).unwrap();
            let c = recursive_tot_canonical(&v, r).unwrap();
            let n = v.len();
            v.rotate_left((seed as usize) % n);
            v.reverse();
            let b = recursive_tot(&v, r).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0));
            prop_assert_eq!(c.to_bits(), recursive_tot_canonical(&v, r).unwrap().to_bits());
        }
    }

    #[test]
    fn fast_mode_tracks_bit_exact(v in positive()) {
        for r in RecursiveAggregator::ALL {
            let agg = ProperAggregator::Recursive(r);
            let a = agg.aggregate_with(&v, ReductionMode::BitExact).unwrap();
            let b = agg.aggregate_with(&v, ReductionMode::Fast).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn pointwise_theory_has_one_pair_per_row(
        rows in prop::collection::vec((-5f64..5.0, -5f64..5.0), 1..40),
        w in -2f64..2.0,
        b in -2f64..2.0,
    ) {
        let x: Vec<Vec<f64>> = rows.iter().map(|r| vec![r.0]).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let s = LabeledDataset::new(1, x, y, LabelKind::Real).unwrap();
        let set = s.observations(Metric::Absolute, Metric::Absolute).unwrap();
        let h = HypothesisSpec::linear(LinearForm::new(vec![w], b));
        let theory = erm_theory().theory().unwrap();
        let model = build_full_model(&h, &set, &theory).unwrap();
        let pairs = colliding_pairs(&model, &theory.aspects()[0]).unwrap();
        // repeated data points share one hypothetical instance
        let mut distinct: Vec<f64> = rows.iter().map(|r| r.0).collect();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        prop_assert_eq!(model.hypothetical().len(), distinct.len());
        prop_assert_eq!(pairs.len(), rows.len());
        let direct: f64 = rows.iter().map(|r| (r.1 - (w * r.0 + b)).abs()).sum::<f64>() / rows.len() as f64;
        prop_assert!((erm_loss(&h, &s).unwrap() - direct).abs() <= 1e-12 * direct.max(1.0));
    }

    #[test]
    fn shifting_scale_times_changes_nothing(
        readings in prop::collection::vec((1u8..=2, 0f64..60.0, 175f64..185.0), 2..30),
        shift in -1e4f64..1e4,
    ) {
        let a: Vec<ScaleReading> = readings.iter().map(|r| ScaleReading { scale_id: r.0, time: r.1, weight: r.2 }).collect();
        let b: Vec<ScaleReading> = a.iter().map(|r| ScaleReading { time: r.time + shift.round(), ..*r }).collect();
        let cfg = ScalesConfig::default();
        let (ra, rb) = (scales_report(&a, &cfg).unwrap(), scales_report(&b, &cfg).unwrap());
        prop_assert_eq!(ra.pairs.len(), rb.pairs.len());
        prop_assert!((ra.incongruity - rb.incongruity).abs() < 1e-9);
    }
}

#[test]
fn modality_filters_select_pairs() {
    let mut set = FormulaSet::new(1, MetricDef::x(Metric::Absolute), MetricDef::y(Metric::Absolute)).unwrap();
    set.push(Formula::new(Modality::observation(0), vec![1.0], 3.0)).unwrap();
    set.push(Formula::new(Modality::observation(0), vec![2.0], 5.0)).unwrap();
    let h = HypothesisSpec::constant(4.0);
    let inc = erm_theory().evaluate(&h, &set, ReductionMode::BitExact).unwrap();
    assert_eq!(inc.total, 1.0);
    assert_eq!(inc.aspects[0].pairs, 2);
}
