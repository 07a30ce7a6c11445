//! Formulas of the observation/hypothesis language and the distances between
//! them.
//!
//! A formula asserts a single value of the unobserved dependence: under some
//! modality, "at data point `x` the feedback is `y`". The dependence itself is
//! never represented; formulas only carry the asserted pair. Observations use
//! the [`ModalityKind::Observation`] modality, hypothetical instances use
//! [`ModalityKind::Hypothetical`]. Groups (`obs:1`, `obs:2`, ...) separate
//! observations or hypotheses recorded in different contexts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalityKind {
    Observation,
    Hypothetical,
}

/// Modality symbol: kind plus group index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Modality {
    pub kind: ModalityKind,
    pub group: u32,
}

impl Modality {
    pub const fn observation(group: u32) -> Self {
        Modality {
            kind: ModalityKind::Observation,
            group,
        }
    }

    pub const fn hypothetical(group: u32) -> Self {
        Modality {
            kind: ModalityKind::Hypothetical,
            group,
        }
    }

    pub fn is_observation(&self) -> bool {
        self.kind == ModalityKind::Observation
    }

    pub fn is_hypothetical(&self) -> bool {
        self.kind == ModalityKind::Hypothetical
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ModalityKind::Observation => "obs",
            ModalityKind::Hypothetical => "hyp",
        };
        write!(f, "{tag}:{}", self.group)
    }
}

impl FromStr for Modality {
    type Err = Error;

    /// Accepts `obs`, `hyp`, `obs:<g>` and `hyp:<g>`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, group) = match s.split_once(':') {
            Some((tag, g)) => {
                let group = g
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::config(format!("invalid modality group in {s:?}")))?;
                (tag.trim(), group)
            }
            None => (s.trim(), 0),
        };
        match tag {
            "obs" => Ok(Modality::observation(group)),
            "hyp" => Ok(Modality::hypothetical(group)),
            _ => Err(Error::config(format!(
                "invalid modality {s:?}, expected obs:<g> or hyp:<g>"
            ))),
        }
    }
}

impl TryFrom<String> for Modality {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Modality> for String {
    fn from(m: Modality) -> String {
        m.to_string()
    }
}

/// Feedback value asserted by a formula.
///
/// Scalar for almost every task; the vector form carries observed points in
/// clustering theories, where the observed vector plays the feedback role.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Feedback {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Feedback {
    pub fn as_slice(&self) -> &[f64] {
        match self {
            Feedback::Scalar(v) => std::slice::from_ref(v),
            Feedback::Vector(v) => v,
        }
    }

    pub fn scalar(&self) -> Option<f64> {
        match self {
            Feedback::Scalar(v) => Some(*v),
            Feedback::Vector(v) if v.len() == 1 => Some(v[0]),
            Feedback::Vector(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.as_slice().len()
    }
}

impl From<f64> for Feedback {
    fn from(v: f64) -> Self {
        Feedback::Scalar(v)
    }
}

impl From<Vec<f64>> for Feedback {
    fn from(v: Vec<f64>) -> Self {
        Feedback::Vector(v)
    }
}

fn bits_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Structural (bitwise) equality, so that formula sets behave as sets.
impl PartialEq for Feedback {
    fn eq(&self, other: &Self) -> bool {
        matches!(
            (self, other),
            (Feedback::Scalar(_), Feedback::Scalar(_)) | (Feedback::Vector(_), Feedback::Vector(_))
        ) && bits_eq(self.as_slice(), other.as_slice())
    }
}

/// One statement `modality(phi(x) = y)`. Immutable once built.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Formula {
    modality: Modality,
    x: Vec<f64>,
    y: Feedback,
}

impl Formula {
    pub fn new(modality: Modality, x: Vec<f64>, y: impl Into<Feedback>) -> Self {
        Formula {
            modality,
            x,
            y: y.into(),
        }
    }

    pub fn modality(&self) -> Modality {
        self.modality
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &Feedback {
        &self.y
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.modality == other.modality && bits_eq(&self.x, &other.x) && self.y == other.y
    }
}

/// Builds a formula from its modality, data point and feedback. The accessors
/// of the result return exactly these arguments.
pub fn make_formula(modality: Modality, x: Vec<f64>, y: impl Into<Feedback>) -> Formula {
    Formula::new(modality, x, y)
}

/// Square table of minimal travel times (minutes) between named locations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TravelTimeTable {
    names: Vec<String>,
    minutes: Vec<Vec<f64>>,
}

impl TravelTimeTable {
    pub fn new(names: Vec<String>, minutes: Vec<Vec<f64>>) -> Result<Self> {
        let table = TravelTimeTable { names, minutes };
        table.validate()?;
        Ok(table)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let n = self.names.len();
        if n == 0 {
            return Err(Error::empty("travel time table has no locations"));
        }
        if self.minutes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.minutes.len(),
            });
        }
        for row in &self.minutes {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::domain(format!(
                    "travel time {v} must be finite and nonnegative"
                )));
            }
        }
        Ok(())
    }

    /// Checks the table is symmetric with a zero diagonal.
    pub fn check_symmetric(&self) -> Result<()> {
        for (i, row) in self.minutes.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(Error::domain(format!(
                    "travel time from {} to itself is {}, expected 0",
                    self.names[i], row[i]
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if *v != self.minutes[j][i] {
                    return Err(Error::domain(format!(
                        "travel times between {} and {} are not symmetric",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn minutes(&self, from: usize, to: usize) -> Result<f64> {
        let n = self.len();
        if from >= n || to >= n {
            return Err(Error::domain(format!(
                "location index {} out of range for {n} locations",
                from.max(to)
            )));
        }
        Ok(self.minutes[from][to])
    }

    fn location(&self, v: f64) -> Result<usize> {
        if v.fract() != 0.0 || v < 0.0 || v >= self.len() as f64 {
            return Err(Error::domain(format!(
                "{v} is not a location index for {} locations",
                self.len()
            )));
        }
        Ok(v as usize)
    }
}

/// Distance or pseudo-distance on data points or feedback values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum Metric {
    Euclidean,
    /// Absolute difference; the L1 norm for vectors.
    Absolute,
    Discrete01,
    /// Zero when the two values agree in sign (`a * b >= 0`), otherwise
    /// `|b - a|`.
    SignAgreement,
    /// `max(0, |a - b| - epsilon)`.
    EpsilonInsensitive { epsilon: f64 },
    TravelTimeTable(TravelTimeTable),
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Absolute => "absolute",
            Metric::Discrete01 => "discrete01",
            Metric::SignAgreement => "sign_agreement",
            Metric::EpsilonInsensitive { .. } => "epsilon_insensitive",
            Metric::TravelTimeTable(_) => "travel_time_table",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Metric::EpsilonInsensitive { epsilon } if !(*epsilon >= 0.0 && epsilon.is_finite()) => Err(
                Error::config(format!("epsilon must be finite and >= 0, got {epsilon}")),
            ),
            Metric::TravelTimeTable(t) => t.validate(),
            _ => Ok(()),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        match self {
            Metric::Euclidean => Ok(euclidean(a, b)),
            Metric::Absolute => Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()),
            Metric::Discrete01 => Ok(if a == b { 0.0 } else { 1.0 }),
            Metric::SignAgreement => {
                let (y1, y2) = scalar_pair(self, a, b)?;
                Ok(if y1 * y2 >= 0.0 { 0.0 } else { (y2 - y1).abs() })
            }
            Metric::EpsilonInsensitive { epsilon } => Ok((euclidean(a, b) - epsilon).max(0.0)),
            Metric::TravelTimeTable(table) => {
                let (y1, y2) = scalar_pair(self, a, b)?;
                table.minutes(table.location(y1)?, table.location(y2)?)
            }
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    if a.len() == 1 {
        return (a[0] - b[0]).abs();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn scalar_pair(m: &Metric, a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    match (a, b) {
        ([x], [y]) => Ok((*x, *y)),
        _ => Err(Error::domain(format!(
            "{} is defined on scalar values only, got dimension {}",
            m.name(),
            a.len()
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    X,
    Y,
}

impl Space {
    fn label(self) -> &'static str {
        match self {
            Space::X => "x-space",
            Space::Y => "y-space",
        }
    }
}

/// A metric bound to the space it measures.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricDef {
    pub metric: Metric,
    pub applies_to: Space,
}

impl MetricDef {
    pub fn x(metric: Metric) -> Self {
        MetricDef {
            metric,
            applies_to: Space::X,
        }
    }

    pub fn y(metric: Metric) -> Self {
        MetricDef {
            metric,
            applies_to: Space::Y,
        }
    }

    fn require(&self, space: Space) -> Result<()> {
        if self.applies_to != space {
            return Err(Error::MetricSpace {
                metric: self.metric.name().to_string(),
                declared: self.applies_to.label(),
                requested: space.label(),
            });
        }
        Ok(())
    }
}

/// Distance between the data points of two formulas.
pub fn rho_x(a: &Formula, b: &Formula, m: &MetricDef) -> Result<f64> {
    m.require(Space::X)?;
    m.metric.distance(a.x(), b.x())
}

/// Distance between the feedback values of two formulas.
pub fn rho_y(a: &Formula, b: &Formula, m: &MetricDef) -> Result<f64> {
    m.require(Space::Y)?;
    m.metric.distance(a.y().as_slice(), b.y().as_slice())
}

/// Ordered collection of formulas sharing one data-point dimension and one
/// pair of metrics. Iteration follows insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaSet {
    formulas: Vec<Formula>,
    x_metric: MetricDef,
    y_metric: MetricDef,
    x_dim: usize,
}

impl FormulaSet {
    pub fn new(x_dim: usize, x_metric: MetricDef, y_metric: MetricDef) -> Result<Self> {
        if x_dim == 0 {
            return Err(Error::config("x dimension must be positive"));
        }
        x_metric.require(Space::X)?;
        y_metric.require(Space::Y)?;
        x_metric.metric.validate()?;
        y_metric.metric.validate()?;
        Ok(FormulaSet {
            formulas: Vec::new(),
            x_metric,
            y_metric,
            x_dim,
        })
    }

    pub fn with_formulas(
        x_dim: usize,
        x_metric: MetricDef,
        y_metric: MetricDef,
        formulas: impl IntoIterator<Item = Formula>,
    ) -> Result<Self> {
        let mut set = FormulaSet::new(x_dim, x_metric, y_metric)?;
        for f in formulas {
            set.push(f)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, formula: Formula) -> Result<()> {
        if formula.x().len() != self.x_dim {
            return Err(Error::DimensionMismatch {
                expected: self.x_dim,
                found: formula.x().len(),
            });
        }
        self.formulas.push(formula);
        Ok(())
    }

    /// An empty set with the same dimension and metrics.
    pub fn empty_like(&self) -> Self {
        FormulaSet {
            formulas: Vec::new(),
            x_metric: self.x_metric.clone(),
            y_metric: self.y_metric.clone(),
            x_dim: self.x_dim,
        }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn get(&self, i: usize) -> Option<&Formula> {
        self.formulas.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn x_metric(&self) -> &MetricDef {
        &self.x_metric
    }

    pub fn y_metric(&self) -> &MetricDef {
        &self.y_metric
    }

    pub fn rho_x(&self, a: &Formula, b: &Formula) -> Result<f64> {
        rho_x(a, b, &self.x_metric)
    }

    pub fn rho_y(&self, a: &Formula, b: &Formula) -> Result<f64> {
        rho_y(a, b, &self.y_metric)
    }
}
