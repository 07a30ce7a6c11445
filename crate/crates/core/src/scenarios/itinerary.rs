use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::evaluate;
use super::records::{Sighting, Who};
use crate::aggregation::{ProperAggregator, TotalAggregator};
use crate::error::{Error, Result};
use crate::formula::{Formula, FormulaSet, Metric, Modality, TravelTimeTable};
use crate::theory::{Aspect, Condition, DeviationFn, PairArg, Regularization, TheoryDocument};

/// A claimed itinerary collides with every sighting; the deviation is the
/// travel time that the time between them cannot cover.
pub fn itinerary_theory(travel: &TravelTimeTable) -> TheoryDocument {
    TheoryDocument {
        name: "itinerary".to_string(),
        x_metric: Metric::Absolute,
        y_metric: Metric::TravelTimeTable(travel.clone()),
        aspects: vec![Aspect::new(
            Condition::And(vec![
                Condition::modality_is(PairArg::First, Modality::hypothetical(0)),
                Condition::modality_is(PairArg::Second, Modality::observation(0)),
            ]),
            DeviationFn::TravelSlack,
            ProperAggregator::MEAN,
        )],
        regularization: Regularization::None,
        top: TotalAggregator::Passthrough,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlackPair {
    /// Index into the claimed sightings.
    pub claimed: usize,
    /// Index into the witnessed sightings.
    pub witnessed: usize,
    pub witness: String,
    pub minutes_apart: f64,
    pub travel_minutes: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItineraryScore {
    pub name: String,
    pub total: f64,
    pub no_collisions: bool,
    /// Pairs with positive slack, largest first.
    pub conflicts: Vec<SlackPair>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItineraryReport {
    /// Best supported itinerary first.
    pub ranking: Vec<ItineraryScore>,
}

fn check_sightings(s: &[Sighting], travel: &TravelTimeTable) -> Result<()> {
    for (i, v) in s.iter().enumerate() {
        if !v.time.is_finite() {
            return Err(Error::domain(format!("sighting {i} has time {}", v.time)));
        }
        if v.location >= travel.len() {
            return Err(Error::domain(format!(
                "sighting {i} is at location {} but only {} are known",
                v.location,
                travel.len()
            )));
        }
    }
    Ok(())
}

fn formula(s: &Sighting, m: Modality) -> Formula {
    Formula::new(m, vec![s.time], s.location as f64)
}

fn score(
    name: &str,
    claimed: &[&Sighting],
    witnessed: &[&Sighting],
    travel: &TravelTimeTable,
) -> Result<ItineraryScore> {
    let doc = itinerary_theory(travel);
    let mut set: FormulaSet = doc.formula_set(1)?;
    for s in witnessed {
        set.push(formula(s, Modality::observation(0)))?;
    }
    let hyp = claimed.iter().map(|s| formula(s, Modality::hypothetical(0))).collect();
    let eval = evaluate(&doc, &set, hyp)?;
    let offset = eval.model.observation_count();
    let mut conflicts = Vec::new();
    for (p, slack) in &eval.pairs[0] {
        if *slack <= 0.0 {
            continue;
        }
        let (c, w) = (claimed[p.first - offset], witnessed[p.second]);
        conflicts.push(SlackPair {
            claimed: p.first - offset,
            witnessed: p.second,
            witness: w.who.name().to_string(),
            minutes_apart: (c.time - w.time).abs(),
            travel_minutes: travel.minutes(c.location, w.location)?,
            slack: *slack,
        });
    }
    conflicts.sort_by(|a, b| b.slack.total_cmp(&a.slack));
    Ok(ItineraryScore {
        name: name.to_string(),
        total: eval.incongruity.total,
        no_collisions: eval.incongruity.aspects[0].no_collisions,
        conflicts,
    })
}

fn rank(scores: &mut [ItineraryScore], descending: bool) {
    scores.sort_by(|a, b| {
        let ord = a.total.total_cmp(&b.total);
        if descending { ord.reverse() } else { ord }.then_with(|| a.name.cmp(&b.name))
    });
}

/// Scores each claimed itinerary against the witnessed sightings, lowest
/// incongruity first. Claimed sightings are grouped by theory name.
pub fn itinerary_report(
    claimed: &[Sighting],
    witnessed: &[Sighting],
    travel: &TravelTimeTable,
) -> Result<ItineraryReport> {
    travel.check_symmetric()?;
    check_sightings(claimed, travel)?;
    check_sightings(witnessed, travel)?;
    if claimed.is_empty() {
        return Err(Error::empty("no claimed sightings"));
    }
    let mut theories: BTreeMap<&str, Vec<&Sighting>> = BTreeMap::new();
    for s in claimed {
        match &s.who {
            Who::Theory(n) => theories.entry(n).or_default().push(s),
            Who::Witness(n) => {
                return Err(Error::config(format!("sighting by witness {n:?} passed as a claimed itinerary")));
            }
        }
    }
    let witnessed: Vec<&Sighting> = witnessed.iter().collect();
    let mut ranking = theories
        .iter()
        .map(|(name, c)| score(name, c, &witnessed, travel))
        .collect::<Result<Vec<_>>>()?;
    rank(&mut ranking, false);
    Ok(ItineraryReport { ranking })
}

/// Treats each witness's sightings as a claimed itinerary and scores it
/// against everyone else's; the least credible witness comes first.
pub fn witness_cross_incongruity(witnessed: &[Sighting], travel: &TravelTimeTable) -> Result<Vec<ItineraryScore>> {
    travel.check_symmetric()?;
    check_sightings(witnessed, travel)?;
    let mut by_name: BTreeMap<&str, Vec<&Sighting>> = BTreeMap::new();
    for s in witnessed {
        by_name.entry(s.who.name()).or_default().push(s);
    }
    if by_name.len() < 2 {
        return Err(Error::config("cross-examination needs at least two witnesses"));
    }
    let mut scores = by_name
        .keys()
        .map(|name| {
            let (own, rest): (Vec<&Sighting>, Vec<&Sighting>) =
                witnessed.iter().partition(|s| s.who.name() == *name);
            score(name, &own, &rest, travel)
        })
        .collect::<Result<Vec<_>>>()?;
    rank(&mut scores, true);
    Ok(scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> TravelTimeTable {
        TravelTimeTable::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![vec![0.0, 60.0, 15.0], vec![60.0, 0.0, 50.0], vec![15.0, 50.0, 0.0]],
        )
        .unwrap()
    }

    fn s(who: Who, time: f64, location: usize) -> Sighting {
        Sighting { who, time, location }
    }

    fn w(name: &str, time: f64, location: usize) -> Sighting {
        s(Who::Witness(name.into()), time, location)
    }

    fn t(name: &str, time: f64, location: usize) -> Sighting {
        s(Who::Theory(name.into()), time, location)
    }

    #[test]
    fn slack_of_a_single_pair() {
        let rep = itinerary_report(&[t("x", 0.0, 0)], &[w("p", 10.0, 2)], &table()).unwrap();
        let top = &rep.ranking[0];
        assert_eq!(top.total, 5.0);
        assert_eq!(top.conflicts[0].travel_minutes, 15.0);
        assert_eq!(top.conflicts[0].minutes_apart, 10.0);
    }

    #[test]
    fn ranks_and_matches_double_loop() {
        let tab = table();
        let claimed = [t("x", 0.0, 0), t("x", 100.0, 1), t("y", 0.0, 1), t("y", 30.0, 2), t("y", 90.0, 0)];
        let witnessed = [w("p", 10.0, 2), w("q", 50.0, 1), w("r", 95.0, 0)];
        let rep = itinerary_report(&claimed, &witnessed, &tab).unwrap();
        for score in &rep.ranking {
            let mut devs = Vec::new();
            for c in claimed.iter().filter(|c| c.who.name() == score.name) {
                for o in &witnessed {
                    let travel = tab.minutes(c.location, o.location).unwrap();
                    devs.push((travel - (c.time - o.time).abs()).max(0.0));
                }
            }
            let mean = devs.iter().sum::<f64>() / devs.len() as f64;
            assert!((score.total - mean).abs() < 1e-12);
        }
        assert!(rep.ranking[0].total <= rep.ranking[1].total);
    }

    #[test]
    fn teleporting_witness_stands_out() {
        let tab = TravelTimeTable::new(vec!["A".into(), "B".into()], vec![vec![0.0, 60.0], vec![60.0, 0.0]]).unwrap();
        let witnessed = [w("T", 5.0, 1), w("P", 0.0, 0), w("Q", 10.0, 0)];
        let scores = witness_cross_incongruity(&witnessed, &tab).unwrap();
        assert_eq!(scores[0].name, "T");
        assert_eq!(scores[0].total, 55.0);
        assert_eq!(scores[1].total, 27.5);
        assert_eq!(scores[2].total, 27.5);
        assert!(witness_cross_incongruity(&witnessed[..1], &tab).is_err());
    }

    #[test]
    fn rejects_asymmetric_tables_and_unknown_locations() {
        let bad = TravelTimeTable::new(vec!["A".into(), "B".into()], vec![vec![0.0, 60.0], vec![50.0, 0.0]]).unwrap();
        assert!(itinerary_report(&[t("x", 0.0, 0)], &[w("p", 0.0, 1)], &bad).is_err());
        assert!(itinerary_report(&[t("x", 0.0, 0)], &[w("p", 0.0, 7)], &table()).is_err());
    }

    #[test]
    fn shifting_all_times_changes_nothing() {
        let tab = table();
        let claimed = [t("x", 0.0, 0), t("x", 100.0, 1)];
        let witnessed = [w("p", 10.0, 2), w("q", 50.0, 1)];
        let shift = |v: &[Sighting]| v.iter().map(|s| Sighting { time: s.time + 1000.0, ..s.clone() }).collect::<Vec<_>>();
        let a = itinerary_report(&claimed, &witnessed, &tab).unwrap();
        let b = itinerary_report(&shift(&claimed), &shift(&witnessed), &tab).unwrap();
        assert_eq!(a, b);
    }
}
