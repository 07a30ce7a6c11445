use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Formula, FormulaSet, Modality};

/// Position of a formula inside an ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum PairArg {
    First,
    Second,
}

impl TryFrom<u8> for PairArg {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(PairArg::First),
            2 => Ok(PairArg::Second),
            _ => Err(Error::config(format!("pair argument must be 1 or 2, got {v}"))),
        }
    }
}

impl From<PairArg> for u8 {
    fn from(a: PairArg) -> u8 {
        match a {
            PairArg::First => 1,
            PairArg::Second => 2,
        }
    }
}

/// Collision condition: a predicate over an ordered pair of formulas built
/// from a closed set of atoms combined with `and` / `or`.
///
/// JSON form uses externally tagged snake-case names, e.g.
/// `{"and": [{"modality_is": {"arg": 1, "modality": "hyp:0"}}, "x_equal"]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    And(Vec<Condition>),
    Or(Vec<Condition>),
    ModalityIs { arg: PairArg, modality: Modality },
    XEqual,
    /// `rho_x <= c`.
    XDistLeq(f64),
    /// `rho_x < c`.
    XDistLt(f64),
    /// `rho_x > c`.
    XDistGt(f64),
    /// `x(a1) < x(a2)`; scalar data points only.
    XLess,
    /// `y(a1) > y(a2)`; scalar feedback only.
    YGreater,
    /// Equal `i`-th coordinate of the data points (1-based).
    CoordEqual(usize),
    AlwaysTrue,
}

fn scalar(v: &[f64], what: &str) -> Result<f64> {
    match v {
        [s] => Ok(*s),
        _ => Err(Error::domain(format!(
            "{what} comparison needs scalar values, got dimension {}",
            v.len()
        ))),
    }
}

impl Condition {
    pub fn modality_is(arg: PairArg, modality: Modality) -> Self {
        Condition::ModalityIs { arg, modality }
    }

    /// Evaluates the predicate on the ordered pair `(a, b)` using the metrics
    /// of `set`.
    pub fn eval(&self, a: &Formula, b: &Formula, set: &FormulaSet) -> Result<bool> {
        Ok(match self {
            Condition::And(cs) => {
                for c in cs {
                    if !c.eval(a, b, set)? {
                        return Ok(false);
                    }
                }
                true
            }
            Condition::Or(cs) => {
                for c in cs {
                    if c.eval(a, b, set)? {
                        return Ok(true);
                    }
                }
                false
            }
            Condition::ModalityIs { arg, modality } => match arg {
                PairArg::First => a.modality() == *modality,
                PairArg::Second => b.modality() == *modality,
            },
            Condition::XEqual => a.x() == b.x(),
            Condition::XDistLeq(c) => set.rho_x(a, b)? <= *c,
            Condition::XDistLt(c) => set.rho_x(a, b)? < *c,
            Condition::XDistGt(c) => set.rho_x(a, b)? > *c,
            Condition::XLess => scalar(a.x(), "x")? < scalar(b.x(), "x")?,
            Condition::YGreater => scalar(a.y().as_slice(), "y")? > scalar(b.y().as_slice(), "y")?,
            Condition::CoordEqual(i) => {
                let dim = a.x().len();
                if *i == 0 || *i > dim {
                    return Err(Error::config(format!(
                        "coordinate {i} out of range 1..={dim}"
                    )));
                }
                a.x()[i - 1] == b.x()[i - 1]
            }
            Condition::AlwaysTrue => true,
        })
    }

    /// True when every satisfying pair forces the first formula to share its
    /// data point with the second, so a hypothesis only needs to be
    /// instantiated at the data points of the set.
    pub fn is_point_generating(&self) -> bool {
        match self {
            Condition::XEqual => true,
            Condition::And(cs) => cs.iter().any(Condition::is_point_generating),
            Condition::Or(cs) => !cs.is_empty() && cs.iter().all(Condition::is_point_generating),
            _ => false,
        }
    }

    /// Hypothetical modalities required of the first formula by conjunctive
    /// `modality_is` atoms.
    pub fn first_hypothetical_modality(&self) -> Option<Modality> {
        match self {
            Condition::ModalityIs {
                arg: PairArg::First,
                modality,
            } if modality.is_hypothetical() => Some(*modality),
            Condition::And(cs) => cs.iter().find_map(Condition::first_hypothetical_modality),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Condition::And(cs) | Condition::Or(cs) => cs.iter().try_for_each(Condition::validate),
            Condition::XDistLeq(c) | Condition::XDistLt(c) | Condition::XDistGt(c) if c.is_nan() => {
                Err(Error::config("distance threshold is NaN"))
            }
            Condition::CoordEqual(0) => Err(Error::config("coordinates are numbered from 1")),
            _ => Ok(()),
        }
    }

    /// The point-wise condition: a hypothetical instance and an observation
    /// at the same data point.
    pub fn pointwise() -> Self {
        Condition::And(vec![
            Condition::modality_is(PairArg::First, Modality::hypothetical(0)),
            Condition::modality_is(PairArg::Second, Modality::observation(0)),
            Condition::XEqual,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{make_formula, Metric, MetricDef};

    fn set() -> FormulaSet {
        FormulaSet::new(1, MetricDef::x(Metric::Absolute), MetricDef::y(Metric::Absolute)).unwrap()
    }

    #[test]
    fn pointwise_condition() {
        let s = set();
        let h = make_formula(Modality::hypothetical(0), vec![1.0], 0.0);
        let o = make_formula(Modality::observation(0), vec![1.0], 1.0);
        let o2 = make_formula(Modality::observation(0), vec![2.0], 1.0);
        let c = Condition::pointwise();
        assert!(c.eval(&h, &o, &s).unwrap());
        assert!(!c.eval(&o, &h, &s).unwrap());
        assert!(!c.eval(&h, &o2, &s).unwrap());
        assert!(c.is_point_generating());
        assert_eq!(c.first_hypothetical_modality(), Some(Modality::hypothetical(0)));
    }

    #[test]
    fn distance_atoms_and_window_boundary() {
        let s = set();
        let a = make_formula(Modality::observation(1), vec![0.0], 180.0);
        let b = make_formula(Modality::observation(2), vec![5.0], 181.0);
        let c = make_formula(Modality::observation(2), vec![6.0], 181.0);
        assert!(Condition::XDistLeq(5.0).eval(&a, &b, &s).unwrap());
        assert!(!Condition::XDistLeq(5.0).eval(&a, &c, &s).unwrap());
        assert!(!Condition::XDistLt(5.0).eval(&a, &b, &s).unwrap());
        assert!(Condition::XDistGt(5.0).eval(&a, &c, &s).unwrap());
        assert!(Condition::XLess.eval(&a, &b, &s).unwrap());
        assert!(Condition::YGreater.eval(&b, &a, &s).unwrap());
        assert!(!Condition::AlwaysTrue.is_point_generating());
        assert!(!Condition::Or(vec![Condition::XEqual, Condition::AlwaysTrue]).is_point_generating());
    }

    #[test]
    fn coord_equal() {
        let s = FormulaSet::new(2, MetricDef::x(Metric::Euclidean), MetricDef::y(Metric::Absolute)).unwrap();
        let a = make_formula(Modality::hypothetical(0), vec![1.0, 2.0], 0.0);
        let b = make_formula(Modality::observation(0), vec![1.0, 3.0], 1.0);
        assert!(Condition::CoordEqual(1).eval(&a, &b, &s).unwrap());
        assert!(!Condition::CoordEqual(2).eval(&a, &b, &s).unwrap());
        assert!(Condition::CoordEqual(3).eval(&a, &b, &s).is_err());
        assert!(Condition::CoordEqual(0).validate().is_err());
    }

    #[test]
    fn json_form() {
        let c: Condition = serde_json::from_str(
            r#"{"and":[{"modality_is":{"arg":1,"modality":"hyp:0"}},{"x_dist_leq":5.0},"x_equal"]}"#,
        )
        .unwrap();
        assert_eq!(
            c,
            Condition::And(vec![
                Condition::modality_is(PairArg::First, Modality::hypothetical(0)),
                Condition::XDistLeq(5.0),
                Condition::XEqual,
            ])
        );
        assert!(serde_json::from_str::<Condition>(r#"{"modality_is":{"arg":3,"modality":"obs"}}"#).is_err());
    }
}
