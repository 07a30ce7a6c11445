use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use loh::aggregation::{
    check_order_invariance_suite, check_proper_axioms, Aggregate, AxiomCheckConfig, MinMinusOne, ProperAggregator,
};
use loh::formula::Formula;
use loh::io::{load_logs, load_scales, load_sightings, load_travel, parse_hypothesis, Dataset};
use loh::learners::{registered_theory, LearnerConfig};
use loh::scenarios::{
    itinerary_report, monotone_dependence_report, scales_report, witness_cross_incongruity, DependenceConfig,
    ScalesConfig, Sighting, Who,
};
use loh::theory::{HypothesisSpec, TheoryDocument};

use crate::report::Report;
use crate::{AggArgs, CheckArgs, Common, EvalArgs, Failure, LearnArgs, Mode, ScenarioArgs, ScenarioKind};

type Outcome<T = ()> = Result<T, Failure>;

fn echo(name: &str, args: &impl Serialize) -> Value {
    json!({ "name": name, "args": args })
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn read_text(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

/// Inline JSON when the argument looks like an object, else a file path.
fn json_arg(arg: &str) -> Outcome<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_text(Path::new(arg))
    }
}

fn numbers(list: &str, what: &str) -> Outcome<Vec<f64>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Schema(format!("{what}: {t:?} is not a number")))
        })
        .collect()
}

/// Runs `f`, timing it outside bit-exact mode.
fn timed<T>(common: &Common, f: impl FnOnce() -> Outcome<T>) -> Outcome<(T, Option<f64>)> {
    let start = Instant::now();
    let v = f()?;
    let ms = (common.mode == Mode::Fast).then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok((v, ms))
}

fn finish(report: Report, common: &Common) -> Outcome {
    report
        .emit(common.out.as_deref())
        .map_err(|e| Failure::Schema(format!("cannot write report: {e}")))
}

fn load_theory(arg: &str) -> Outcome<TheoryDocument> {
    if !arg.trim_start().starts_with('{') && !Path::new(arg).exists() {
        return registered_theory(arg).ok_or_else(|| Failure::Schema(format!("unknown theory {arg:?}")));
    }
    Ok(TheoryDocument::from_json(&json_arg(arg)?)?)
}

fn load_hypothesis(arg: Option<&str>, data: &Dataset) -> Outcome<HypothesisSpec> {
    match arg {
        None => {
            let rows = data.hypothetical();
            if rows.is_empty() {
                return Err(Failure::Schema("no --hypothesis given and the dataset has no hyp rows".into()));
            }
            Ok(HypothesisSpec::instances(rows))
        }
        Some(a) if a.ends_with(".csv") => {
            let inst = Dataset::load(Path::new(a))?;
            if inst.x_dim != data.x_dim {
                return Err(Failure::Schema(format!(
                    "{a}: instances have {} features, the dataset has {}",
                    inst.x_dim, data.x_dim
                )));
            }
            let rows = inst
                .rows
                .iter()
                .map(|r| {
                    let m = loh::formula::Modality::hypothetical(r.modality.group);
                    Formula::new(m, r.x.clone(), r.y)
                })
                .collect();
            Ok(HypothesisSpec::instances(rows))
        }
        Some(a) => Ok(parse_hypothesis(&json_arg(a)?)?.to_spec(data.x_dim)?),
    }
}

pub fn eval(a: &EvalArgs) -> Outcome {
    let data = Dataset::load(&a.data)?;
    let doc = load_theory(&a.theory)?;
    let h = load_hypothesis(a.hypothesis.as_deref(), &data)?;
    let s = data.observations(doc.x_metric.clone(), doc.y_metric.clone())?;
    let (inc, ms) = timed(&a.common, || Ok(doc.evaluate(&h, &s, a.common.mode.into())?))?;
    let mut r = Report::new(echo("eval", a));
    r.total = Some(inc.total);
    r.breakdown = json!({
        "theory": doc.name,
        "hypothesis": h.id(),
        "aspects": inc.aspects,
        "regularization": inc.regularization,
    });
    r.timing_ms = ms;
    finish(r, &a.common)
}

fn learner_config(a: &LearnArgs) -> Outcome<LearnerConfig> {
    let text = if a.learner.trim_start().starts_with('{') || Path::new(&a.learner).is_file() {
        json_arg(&a.learner)?
    } else {
        let params: Option<Value> = match &a.params {
            Some(p) => Some(serde_json::from_str(&json_arg(p)?).map_err(|e| Failure::Schema(format!("--params: {e}")))?),
            None => None,
        };
        let mut doc = json!({ "name": a.learner });
        if let Some(p) = params {
            doc["params"] = p;
        }
        doc.to_string()
    };
    LearnerConfig::from_json(&text).map_err(|e| Failure::Schema(format!("learner: {e}")))
}

pub fn learn(a: &LearnArgs) -> Outcome {
    let cfg = learner_config(a)?;
    let data = Dataset::load(&a.data)?;
    let query = a.query.as_deref().map(|q| numbers(q, "query")).transpose()?;
    let (d, ms) = timed(&a.common, || Ok(cfg.run(&data, query.as_deref(), a.common.seed)?))?;
    let mut r = Report::new(echo("learn", a));
    r.total = Some(d.loss);
    r.breakdown = json!({ "learner": cfg.name(), "config": cfg });
    let mut decision = to_value(&d);
    r.trace = decision.as_object_mut().and_then(|o| o.remove("trace")).unwrap_or(Value::Null);
    r.decision = decision;
    r.timing_ms = ms;
    finish(r, &a.common)
}

fn travel_sightings(a: &ScenarioArgs) -> Outcome<(loh::formula::TravelTimeTable, Vec<Sighting>)> {
    let path = a
        .travel
        .as_deref()
        .ok_or_else(|| Failure::Schema(format!("--travel is required for the {:?} scenario", a.scenario)))?;
    let travel = load_travel(path)?;
    let sightings = load_sightings(&a.data, &travel)?;
    Ok((travel, sightings))
}

pub fn scenario(a: &ScenarioArgs) -> Outcome {
    let ((total, breakdown), ms) = timed(&a.common, || {
        Ok(match a.scenario {
            ScenarioKind::Scales => {
                let cfg = ScalesConfig {
                    window: a.window,
                    tol: a.tol,
                    aggregator: ProperAggregator::from_id(&a.agg, Some(a.p))?,
                };
                let rep = scales_report(&load_scales(&a.data)?, &cfg)?;
                (rep.incongruity, to_value(&rep))
            }
            ScenarioKind::Dependence => {
                let cfg = DependenceConfig {
                    x_gap: a.x_gap,
                    y_tol: a.y_tol,
                    monotone: !a.no_monotone,
                };
                let rep = monotone_dependence_report(&load_logs(&a.data)?, &cfg)?;
                (rep.total, to_value(&rep))
            }
            ScenarioKind::Itinerary => {
                let (travel, all) = travel_sightings(a)?;
                let (claimed, witnessed): (Vec<Sighting>, Vec<Sighting>) =
                    all.into_iter().partition(|s| matches!(s.who, Who::Theory(_)));
                let rep = itinerary_report(&claimed, &witnessed, &travel)?;
                (rep.ranking[0].total, to_value(&rep))
            }
            ScenarioKind::Witnesses => {
                let (travel, all) = travel_sightings(a)?;
                let witnessed: Vec<Sighting> = all.into_iter().filter(|s| matches!(s.who, Who::Witness(_))).collect();
                let scores = witness_cross_incongruity(&witnessed, &travel)?;
                (scores[0].total, json!({ "ranking": scores }))
            }
        })
    })?;
    let mut r = Report::new(echo("scenario", a));
    r.total = Some(total);
    r.breakdown = breakdown;
    r.timing_ms = ms;
    finish(r, &a.common)
}

pub fn agg(a: &AggArgs) -> Outcome {
    let agg = ProperAggregator::from_id(&a.id, a.p)?;
    let values = numbers(&a.values, "values")?;
    let (v, ms) = timed(&a.common, || Ok(agg.aggregate_with(&values, a.common.mode.into())?))?;
    let mut r = Report::new(echo("agg", a));
    r.total = Some(v);
    r.breakdown = json!({ "aggregator": agg.label(), "count": values.len() });
    r.timing_ms = ms;
    finish(r, &a.common)
}

pub fn check(a: &CheckArgs) -> Outcome {
    let ((passed, breakdown), ms) = timed(&a.common, || {
        if a.agg == "min_minus_one" {
            let rep = check_proper_axioms(&MinMinusOne, &AxiomCheckConfig::new(a.trials, a.size_max, a.common.seed));
            return Ok((rep.all_passed(), json!({ "axioms": rep })));
        }
        let agg = ProperAggregator::from_id(&a.agg, a.p)?;
        let cfg = AxiomCheckConfig::for_aggregator(&agg, a.trials, a.size_max, a.common.seed);
        let axioms = check_proper_axioms(&agg, &cfg);
        let mut passed = axioms.all_passed();
        let order = match &agg {
            ProperAggregator::Recursive(rec) => {
                let suite =
                    check_order_invariance_suite(*rec, a.multisets, a.size_max, a.permutations, a.common.seed)?;
                passed &= suite.passed;
                to_value(&suite)
            }
            _ => Value::Null,
        };
        Ok((passed, json!({ "axioms": axioms, "order_invariance": order })))
    })?;
    let mut r = Report::new(echo("check", a));
    r.breakdown = breakdown;
    r.decision = json!({ "passed": passed });
    r.timing_ms = ms;
    finish(r, &a.common)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}
