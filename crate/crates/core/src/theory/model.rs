use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Aspect, IncongruityTheory};
use crate::aggregation::ReductionMode;
use crate::error::{Error, Result};
use crate::formula::{Feedback, Formula, FormulaSet, Modality};

/// Linear form `w . x + b` of a hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub w: Vec<f64>,
    pub b: f64,
}

impl LinearForm {
    pub fn new(w: Vec<f64>, b: f64) -> Self {
        LinearForm { w, b }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + self.b
    }

    pub fn weight_norm_sq(&self) -> f64 {
        self.w.iter().map(|w| w * w).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        LinearForm {
            w: self.w.iter().map(|w| w * s).collect(),
            b: self.b * s,
        }
    }
}

type PointFn = dyn Fn(&[f64]) -> Feedback + Send + Sync;

/// A hypothesis given as a function of the data point.
#[derive(Clone)]
pub struct PointFunction {
    id: String,
    f: Arc<PointFn>,
    linear: Option<LinearForm>,
}

impl PointFunction {
    pub fn new(id: impl Into<String>, f: impl Fn(&[f64]) -> Feedback + Send + Sync + 'static) -> Self {
        PointFunction {
            id: id.into(),
            f: Arc::new(f),
            linear: None,
        }
    }

    /// Attaches the linear form used by weight-norm regularization. Use
    /// [`PointFunction::check_linear_form`] to confirm it matches the
    /// function.
    pub fn with_linear_form(mut self, form: LinearForm) -> Self {
        self.linear = Some(form);
        self
    }

    pub fn eval(&self, x: &[f64]) -> Feedback {
        (self.f)(x)
    }

    /// Verifies `h(x) = w . x + b` within 1e-9 on the given points.
    pub fn check_linear_form(&self, points: &[Vec<f64>]) -> Result<()> {
        let Some(form) = &self.linear else {
            return Ok(());
        };
        for x in points {
            let h = self
                .eval(x)
                .scalar()
                .ok_or_else(|| Error::domain("linear form attached to a vector-valued hypothesis"))?;
            let l = form.eval(x);
            if (h - l).abs() > 1e-9 * 1f64.max(h.abs()) {
                return Err(Error::domain(format!(
                    "linear form gives {l} but the hypothesis gives {h} at {x:?}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PointFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointFunction")
            .field("id", &self.id)
            .field("linear", &self.linear)
            .finish_non_exhaustive()
    }
}

/// A hypothesis: either a function instantiated where the theory needs it,
/// or an explicit finite set of hypothetical formulas.
#[derive(Clone, Debug)]
pub enum HypothesisSpec {
    PointFunction(PointFunction),
    ExplicitInstances(Vec<Formula>),
}

impl HypothesisSpec {
    pub fn constant(c: f64) -> Self {
        HypothesisSpec::PointFunction(PointFunction::new(format!("constant({c})"), move |_| {
            Feedback::Scalar(c)
        }))
    }

    pub fn linear(form: LinearForm) -> Self {
        let f = form.clone();
        HypothesisSpec::PointFunction(
            PointFunction::new("linear", move |x| Feedback::Scalar(f.eval(x))).with_linear_form(form),
        )
    }

    pub fn function(id: impl Into<String>, f: impl Fn(&[f64]) -> Feedback + Send + Sync + 'static) -> Self {
        HypothesisSpec::PointFunction(PointFunction::new(id, f))
    }

    pub fn instances(formulas: Vec<Formula>) -> Self {
        HypothesisSpec::ExplicitInstances(formulas)
    }

    pub fn id(&self) -> String {
        match self {
            HypothesisSpec::PointFunction(p) => p.id.clone(),
            HypothesisSpec::ExplicitInstances(v) => format!("instances({})", v.len()),
        }
    }

    pub fn linear_form(&self) -> Option<&LinearForm> {
        match self {
            HypothesisSpec::PointFunction(p) => p.linear.as_ref(),
            HypothesisSpec::ExplicitInstances(_) => None,
        }
    }
}

/// Observations together with the hypothetical formulas a theory needs.
#[derive(Clone, Debug, PartialEq)]
pub struct FullModel {
    formulas: FormulaSet,
    observations: usize,
    pub theory: String,
    pub hypothesis: String,
}

impl FullModel {
    pub fn formulas(&self) -> &FormulaSet {
        &self.formulas
    }

    /// Number of leading formulas copied from the observation set.
    pub fn observation_count(&self) -> usize {
        self.observations
    }

    pub fn hypothetical(&self) -> &[Formula] {
        &self.formulas.formulas()[self.observations..]
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas.formulas()[i]
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}

fn x_key(x: &[f64]) -> Vec<u64> {
    // +0.0 and -0.0 are the same data point
    x.iter().map(|v| if *v == 0.0 { 0 } else { v.to_bits() }).collect()
}

/// Builds the smallest formula set containing the observations and every
/// hypothetical instance the theory's collision conditions require.
///
/// A function hypothesis is instantiated once at every distinct observed data
/// point, which is exactly the closure for point-generating conditions; other
/// conditions have no finite constructive closure and are rejected. Explicit
/// instances are used as given.
pub fn build_full_model(h: &HypothesisSpec, s: &FormulaSet, t: &IncongruityTheory) -> Result<FullModel> {
    let mut formulas = s.clone();
    match h {
        HypothesisSpec::PointFunction(p) => {
            let mut modalities: Vec<Modality> = Vec::new();
            for aspect in t.aspects() {
                if !aspect.condition.is_point_generating() {
                    return Err(Error::UnsupportedTheory(format!(
                        "theory {:?}: a function hypothesis needs point-generating collision conditions \
                         (an x_equal conjunct); supply explicit instances instead",
                        t.name()
                    )));
                }
                let m = aspect
                    .condition
                    .first_hypothetical_modality()
                    .unwrap_or(Modality::hypothetical(0));
                if !modalities.contains(&m) {
                    modalities.push(m);
                }
            }
            let mut seen = HashSet::new();
            let points: Vec<&[f64]> = s
                .iter()
                .map(Formula::x)
                .filter(|x| seen.insert(x_key(x)))
                .collect();
            for m in modalities {
                for x in &points {
                    formulas.push(Formula::new(m, x.to_vec(), p.eval(x)))?;
                }
            }
        }
        HypothesisSpec::ExplicitInstances(instances) => {
            for f in instances {
                if !f.modality().is_hypothetical() {
                    return Err(Error::config(format!(
                        "explicit instances must carry a hypothetical modality, got {}",
                        f.modality()
                    )));
                }
                formulas.push(f.clone())?;
            }
        }
    }
    Ok(FullModel {
        formulas,
        observations: s.len(),
        theory: t.name().to_string(),
        hypothesis: h.id(),
    })
}

/// Ordered pair of formula indices into a [`FullModel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollidingPair {
    pub first: usize,
    pub second: usize,
}

fn pairs_from(m: &FullModel, a: &Aspect, i: usize) -> Result<Vec<CollidingPair>> {
    let set = m.formulas();
    let fi = m.formula(i);
    let mut out = Vec::new();
    for j in 0..m.len() {
        if i != j && a.condition.eval(fi, m.formula(j), set)? {
            out.push(CollidingPair { first: i, second: j });
        }
    }
    Ok(out)
}

/// Ordered pairs of distinct formulas satisfying the aspect's condition, in
/// lexicographic index order.
pub fn colliding_pairs(m: &FullModel, a: &Aspect) -> Result<Vec<CollidingPair>> {
    colliding_pairs_with(m, a, ReductionMode::BitExact)
}

pub fn colliding_pairs_with(m: &FullModel, a: &Aspect, mode: ReductionMode) -> Result<Vec<CollidingPair>> {
    let chunks: Vec<Vec<CollidingPair>> = match mode {
        ReductionMode::BitExact => (0..m.len()).map(|i| pairs_from(m, a, i)).collect::<Result<_>>()?,
        ReductionMode::Fast => (0..m.len())
            .into_par_iter()
            .map(|i| pairs_from(m, a, i))
            .collect::<Result<_>>()?,
    };
    Ok(chunks.concat())
}

/// One deviation per colliding pair, in pair order.
pub fn aspect_deviations(m: &FullModel, a: &Aspect) -> Result<Vec<f64>> {
    aspect_deviations_with(m, a, ReductionMode::BitExact)
}

pub fn aspect_deviations_with(m: &FullModel, a: &Aspect, mode: ReductionMode) -> Result<Vec<f64>> {
    let pairs = colliding_pairs_with(m, a, mode)?;
    let set = m.formulas();
    let dev = |p: &CollidingPair| -> Result<f64> {
        let (f1, f2) = (m.formula(p.first), m.formula(p.second));
        Ok(a.deviation.apply(set.rho_y(f1, f2)?, set.rho_x(f1, f2)?))
    };
    match mode {
        ReductionMode::BitExact => pairs.iter().map(dev).collect(),
        ReductionMode::Fast => pairs.par_iter().map(dev).collect(),
    }
}
