//! Recursive aggregation: `TOT(G) = norm(agg(n), n)` with
//! `agg(1) = scale(g_1)` and `agg(i + 1) = plus(agg(i), scale(g_{i+1}))`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four (plus, scale, norm) interpretations.
///
/// | row | plus | scale | norm(x, i) | TOT |
/// |-----|------|-------|------------|-----|
/// | Mean | x + y | x | x / i | arithmetic mean |
/// | Rms | x + y | x^2 | sqrt(x / i) | root mean square |
/// | Max | max(x, y) | x | x | maximum |
/// | GeoMean | x * y | x | x^(1/i) | geometric mean |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursiveAggregator {
    Mean,
    Rms,
    Max,
    GeoMean,
}

impl RecursiveAggregator {
    pub const ALL: [RecursiveAggregator; 4] = [
        RecursiveAggregator::Mean,
        RecursiveAggregator::Rms,
        RecursiveAggregator::Max,
        RecursiveAggregator::GeoMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecursiveAggregator::Mean => "mean",
            RecursiveAggregator::Rms => "rms",
            RecursiveAggregator::Max => "max",
            RecursiveAggregator::GeoMean => "geomean",
        }
    }

    pub fn scale(self, x: f64) -> f64 {
        match self {
            RecursiveAggregator::Rms => x * x,
            _ => x,
        }
    }

    pub fn plus(self, x: f64, y: f64) -> f64 {
        match self {
            RecursiveAggregator::Mean | RecursiveAggregator::Rms => x + y,
            RecursiveAggregator::Max => x.max(y),
            RecursiveAggregator::GeoMean => x * y,
        }
    }

    pub fn norm(self, x: f64, count: usize) -> f64 {
        let i = count as f64;
        match self {
            RecursiveAggregator::Mean => x / i,
            RecursiveAggregator::Rms => (x / i).sqrt(),
            RecursiveAggregator::Max => x,
            RecursiveAggregator::GeoMean => x.powf(1.0 / i),
        }
    }

    /// Rms is monotone only on nonnegative inputs (its scale is `x^2`) and
    /// GeoMean needs strictly positive inputs.
    pub fn check_domain(self, values: &[f64]) -> Result<()> {
        if let Some(v) = values.iter().find(|v| v.is_nan()) {
            return Err(Error::domain(format!("{} input is NaN: {v}", self.name())));
        }
        match self {
            RecursiveAggregator::Rms => match values.iter().find(|v| **v < 0.0) {
                Some(v) => Err(Error::domain(format!("rms requires nonnegative inputs, got {v}"))),
                None => Ok(()),
            },
            RecursiveAggregator::GeoMean => match values.iter().find(|v| **v <= 0.0) {
                Some(v) => Err(Error::domain(format!(
                    "geomean requires strictly positive inputs, got {v}"
                ))),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

/// Evaluates the recursion over `values` in the order given.
pub fn recursive_tot(values: &[f64], r: RecursiveAggregator) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::empty("aggregation of an empty multiset"));
    }
    r.check_domain(values)?;
    let mut acc = r.scale(values[0]);
    for &v in &values[1..] {
        acc = r.plus(acc, r.scale(v));
    }
    if r == RecursiveAggregator::GeoMean && !acc.is_normal() {
        return Ok(log_space_geomean(values));
    }
    Ok(r.norm(acc, values.len()))
}

/// Geometric mean through logarithms, for products that leave the normal
/// floating-point range.
fn log_space_geomean(values: &[f64]) -> f64 {
    let mut acc = 0.0;
    for v in values {
        acc += v.ln();
    }
    (acc / values.len() as f64).exp()
}

/// Evaluates the recursion after sorting the inputs, so every permutation of
/// the same multiset produces bitwise-identical output.
pub fn recursive_tot_canonical(values: &[f64], r: RecursiveAggregator) -> Result<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    recursive_tot(&sorted, r)
}

/// Parallel tree reduction. Differs from the sequential forms only by
/// floating-point reassociation.
pub fn recursive_tot_parallel(values: &[f64], r: RecursiveAggregator) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::empty("aggregation of an empty multiset"));
    }
    r.check_domain(values)?;
    let acc = values
        .par_iter()
        .map(|&v| r.scale(v))
        .reduce_with(|a, b| r.plus(a, b))
        .expect("nonempty");
    if r == RecursiveAggregator::GeoMean && !acc.is_normal() {
        return Ok(log_space_geomean(values));
    }
    Ok(r.norm(acc, values.len()))
}
