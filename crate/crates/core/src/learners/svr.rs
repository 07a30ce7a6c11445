//! Support vector regression, linear or on an explicit basis.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::dataset::{LabelKind, LabeledDataset};
use super::decision::{Decision, Outcome, TraceStep};
use super::ridge::ridge_fit;
use super::svm::{check_alpha, Schedule};
use crate::error::{Error, Result};
use crate::theory::LinearForm;

/// Basis functions applied to data points before fitting.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum Basis {
    #[default]
    Identity,
    /// Powers `1..=degree` of every coordinate, coordinate-major.
    Polynomial { degree: u32 },
    /// `exp(-|x - c|^2 / (2 width^2))` for every center `c`.
    RadialCenters { centers: Vec<Vec<f64>>, width: f64 },
}

impl Basis {
    pub fn validate(&self, x_dim: usize) -> Result<()> {
        match self {
            Basis::Identity => Ok(()),
            Basis::Polynomial { degree } if *degree == 0 => Err(Error::config("polynomial degree must be >= 1")),
            Basis::Polynomial { .. } => Ok(()),
            Basis::RadialCenters { centers, width } => {
                if centers.is_empty() {
                    return Err(Error::config("radial basis needs at least one center"));
                }
                if let Some(c) = centers.iter().find(|c| c.len() != x_dim) {
                    return Err(Error::DimensionMismatch {
                        expected: x_dim,
                        found: c.len(),
                    });
                }
                if !(*width > 0.0 && width.is_finite()) {
                    return Err(Error::config(format!("radial width must be positive, got {width}")));
                }
                Ok(())
            }
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Basis::Identity => x.to_vec(),
            Basis::Polynomial { degree } => x
                .iter()
                .flat_map(|v| (1..=*degree as i32).map(move |p| v.powi(p)))
                .collect(),
            Basis::RadialCenters { centers, width } => centers
                .iter()
                .map(|c| {
                    let d2: f64 = x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum();
                    (-d2 / (2.0 * width * width)).exp()
                })
                .collect(),
        }
    }

    pub fn output_dim(&self, x_dim: usize) -> usize {
        match self {
            Basis::Identity => x_dim,
            Basis::Polynomial { degree } => x_dim * *degree as usize,
            Basis::RadialCenters { centers, .. } => centers.len(),
        }
    }
}

/// Maps every data point through the basis; labels are kept.
pub fn kernel_transform(s: &LabeledDataset, basis: &Basis) -> Result<LabeledDataset> {
    basis.validate(s.x_dim())?;
    LabeledDataset::new(
        basis.output_dim(s.x_dim()),
        s.points().iter().map(|x| basis.apply(x)).collect(),
        s.labels().to_vec(),
        s.kind(),
    )
}

fn check(form: &LinearForm, s: &LabeledDataset, epsilon: f64, lambda: f64) -> Result<()> {
    if form.w.len() != s.x_dim() {
        return Err(Error::DimensionMismatch {
            expected: s.x_dim(),
            found: form.w.len(),
        });
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::config(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    check_alpha(lambda)
}

/// `sum max(0, |y - f(x)| - epsilon) + lambda |w|^2`.
pub fn svr_loss(form: &LinearForm, s: &LabeledDataset, epsilon: f64, lambda: f64) -> Result<f64> {
    check(form, s, epsilon, lambda)?;
    let total: f64 = s.rows().map(|(x, y)| ((y - form.eval(x)).abs() - epsilon).max(0.0)).sum();
    Ok(total + lambda * form.weight_norm_sq())
}

/// Starts from the ridge solution, then runs subgradient descent on
/// [`svr_loss`] over the transformed data, keeping the best iterate.
pub fn svr_train(s: &LabeledDataset, epsilon: f64, lambda: f64, basis: &Basis, sched: &Schedule) -> Result<Decision> {
    s.require_nonempty()?;
    s.require_kind(&[LabelKind::Real, LabelKind::Binary01, LabelKind::BinaryPm1])?;
    sched.validate()?;
    let t = kernel_transform(s, basis)?;
    let m = t.len() as f64;
    let mut form = ridge_fit(&t, (lambda / m).max(1e-9)).unwrap_or_else(|_| LinearForm::new(vec![0.0; t.x_dim()], 0.0));
    let mut best_loss = svr_loss(&form, &t, epsilon, lambda)?;
    let mut best = (form.clone(), 0);
    let mut trace = vec![TraceStep::new("focusing", json!({"basis": basis, "dim": t.x_dim()}), None)];
    trace.push(TraceStep::new("fitting", json!({"iteration": 0, "init": "ridge"}), Some(best_loss)));
    for step in 1..=sched.iterations {
        let mut gw: Vec<f64> = form.w.iter().map(|w| 2.0 * lambda * w / m).collect();
        let mut gb = 0.0;
        for (x, y) in t.rows() {
            let r = y - form.eval(x);
            if r.abs() > epsilon {
                let sign = r.signum();
                for (g, xi) in gw.iter_mut().zip(x) {
                    *g -= sign * xi / m;
                }
                gb -= sign / m;
            }
        }
        let eta = sched.step(step);
        for (w, g) in form.w.iter_mut().zip(&gw) {
            *w -= eta * g;
        }
        form.b -= eta * gb;
        let loss = svr_loss(&form, &t, epsilon, lambda)?;
        if loss < best_loss {
            best_loss = loss;
            best = (form.clone(), step);
        }
        if step % 1000 == 0 || step == sched.iterations {
            trace.push(TraceStep::new("fitting", json!({"iteration": step}), Some(best_loss)));
        }
    }
    trace.push(TraceStep::new("optimal_selection", json!({"iteration": best.1}), Some(best_loss)));
    let mut d = Decision::new(
        Outcome::Linear {
            w: best.0.w,
            b: best.0.b,
        },
        best_loss,
        "svr",
    );
    d.trace = trace;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{engine_pointwise, svr_theory};
    use crate::theory::HypothesisSpec;

    fn line(xs: &[f64], ys: &[f64]) -> LabeledDataset {
        LabeledDataset::new(1, xs.iter().map(|x| vec![*x]).collect(), ys.to_vec(), LabelKind::Real).unwrap()
    }

    #[test]
    fn loss_examples() {
        let zero = LinearForm::new(vec![0.0], 0.0);
        assert_eq!(svr_loss(&zero, &line(&[1.0], &[0.5]), 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(svr_loss(&zero, &line(&[1.0], &[2.0]), 0.5, 0.0).unwrap(), 1.5);
        let s = line(&[1.0, 2.0], &[2.0, -3.0]);
        let f = LinearForm::new(vec![1.0], 0.0);
        let direct = svr_loss(&f, &s, 0.5, 0.25).unwrap();
        assert_eq!(direct, 0.5 + 4.5 + 0.25);
        let e = engine_pointwise(&svr_theory(0.5, 0.25), &HypothesisSpec::linear(f), &s).unwrap();
        assert_eq!(e.total, direct);
    }

    #[test]
    fn transforms() {
        assert_eq!(Basis::Polynomial { degree: 2 }.apply(&[3.0]), vec![3.0, 9.0]);
        let s = line(&[1.0, 2.0], &[0.0, 1.0]);
        assert_eq!(kernel_transform(&s, &Basis::Identity).unwrap(), s);
        let r = Basis::RadialCenters { centers: vec![vec![0.0]], width: 1.0 };
        assert_eq!(r.apply(&[0.0]), vec![1.0]);
    }

    #[test]
    fn quadratic_basis_fits_a_parabola() {
        let xs: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let s = line(&xs, &ys);
        let sched = Schedule { eta0: 0.1, iterations: 300 };
        let quad = svr_train(&s, 0.1, 0.0, &Basis::Polynomial { degree: 2 }, &sched).unwrap();
        assert_eq!(quad.loss, 0.0);
        let lin = svr_train(&s, 0.1, 0.0, &Basis::Identity, &sched).unwrap();
        assert!(lin.loss > 1.0);
    }
}
