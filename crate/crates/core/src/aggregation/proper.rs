use serde::{Deserialize, Serialize};

use super::recursive::{recursive_tot_canonical, recursive_tot_parallel, RecursiveAggregator};
use super::{Aggregate, ReductionMode};
use crate::error::{Error, Result};

/// An aggregation operation satisfying monotony, idempotence and tautology.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "AggregatorSpec", into = "AggregatorSpec")]
pub enum ProperAggregator {
    Percentile(f64),
    Median,
    Recursive(RecursiveAggregator),
}

/// JSON form: `{"id": "mean" | "rms" | "max" | "geomean" | "median" | "percentile", "params": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
enum AggregatorSpec {
    Mean,
    Rms,
    Max,
    Geomean,
    Median,
    Percentile { p: f64 },
}

impl From<AggregatorSpec> for ProperAggregator {
    fn from(s: AggregatorSpec) -> Self {
        match s {
            AggregatorSpec::Mean => ProperAggregator::Recursive(RecursiveAggregator::Mean),
            AggregatorSpec::Rms => ProperAggregator::Recursive(RecursiveAggregator::Rms),
            AggregatorSpec::Max => ProperAggregator::Recursive(RecursiveAggregator::Max),
            AggregatorSpec::Geomean => ProperAggregator::Recursive(RecursiveAggregator::GeoMean),
            AggregatorSpec::Median => ProperAggregator::Median,
            AggregatorSpec::Percentile { p } => ProperAggregator::Percentile(p),
        }
    }
}

impl From<ProperAggregator> for AggregatorSpec {
    fn from(a: ProperAggregator) -> Self {
        match a {
            ProperAggregator::Recursive(RecursiveAggregator::Mean) => AggregatorSpec::Mean,
            ProperAggregator::Recursive(RecursiveAggregator::Rms) => AggregatorSpec::Rms,
            ProperAggregator::Recursive(RecursiveAggregator::Max) => AggregatorSpec::Max,
            ProperAggregator::Recursive(RecursiveAggregator::GeoMean) => AggregatorSpec::Geomean,
            ProperAggregator::Median => AggregatorSpec::Median,
            ProperAggregator::Percentile(p) => AggregatorSpec::Percentile { p },
        }
    }
}

impl ProperAggregator {
    pub const MEAN: ProperAggregator = ProperAggregator::Recursive(RecursiveAggregator::Mean);
    pub const MAX: ProperAggregator = ProperAggregator::Recursive(RecursiveAggregator::Max);

    /// Minimum, as the 0th percentile.
    pub const MIN: ProperAggregator = ProperAggregator::Percentile(0.0);

    pub fn percentile(p: f64) -> Result<Self> {
        let agg = ProperAggregator::Percentile(p);
        agg.validate()?;
        Ok(agg)
    }

    /// Parses the short identifiers used on the command line.
    pub fn from_id(id: &str, p: Option<f64>) -> Result<Self> {
        let agg = match id {
            "mean" => ProperAggregator::MEAN,
            "rms" => ProperAggregator::Recursive(RecursiveAggregator::Rms),
            "max" => ProperAggregator::MAX,
            "geomean" => ProperAggregator::Recursive(RecursiveAggregator::GeoMean),
            "median" => ProperAggregator::Median,
            "percentile" => ProperAggregator::Percentile(
                p.ok_or_else(|| Error::config("percentile requires a p parameter"))?,
            ),
            other => return Err(Error::config(format!("unknown aggregator id {other:?}"))),
        };
        agg.validate()?;
        Ok(agg)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ProperAggregator::Percentile(p) if !(0.0..=100.0).contains(p) => Err(Error::config(
                format!("percentile must lie in [0, 100], got {p}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn aggregate_with(&self, values: &[f64], mode: ReductionMode) -> Result<f64> {
        match self {
            ProperAggregator::Percentile(p) => percentile_agg(values, *p),
            ProperAggregator::Median => median(values),
            ProperAggregator::Recursive(r) => match mode {
                ReductionMode::BitExact => recursive_tot_canonical(values, *r),
                ReductionMode::Fast => recursive_tot_parallel(values, *r),
            },
        }
    }
}

impl Aggregate for ProperAggregator {
    fn aggregate(&self, values: &[f64]) -> Result<f64> {
        self.aggregate_with(values, ReductionMode::BitExact)
    }

    fn label(&self) -> String {
        match self {
            ProperAggregator::Percentile(p) => format!("percentile({p})"),
            ProperAggregator::Median => "median".to_string(),
            ProperAggregator::Recursive(r) => r.name().to_string(),
        }
    }
}

fn sorted(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::empty("aggregation of an empty multiset"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::domain("aggregation input contains NaN"));
    }
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(s)
}

/// Median; the midpoint of the two middle elements for even cardinality.
pub fn median(values: &[f64]) -> Result<f64> {
    let s = sorted(values)?;
    let n = s.len();
    if n % 2 == 1 {
        Ok(s[n / 2])
    } else {
        Ok((s[n / 2 - 1] + s[n / 2]) / 2.0)
    }
}

/// Percentile of a multiset. `p = 50` is the median; any other `p` selects
/// the element of 1-based rank `min(n, floor(p * n / 100) + 1)` of the sorted
/// multiset, i.e. the smallest element with strictly more than `p` percent of
/// the multiset at or below its rank (`p = 0` is the minimum, `p = 100` the
/// maximum).
pub fn percentile_agg(values: &[f64], p: f64) -> Result<f64> {
    if !(0.0..=100.0).contains(&p) {
        return Err(Error::domain(format!("percentile must lie in [0, 100], got {p}")));
    }
    if p == 50.0 {
        return median(values);
    }
    let s = sorted(values)?;
    let n = s.len();
    let rank = ((p * n as f64 / 100.0).floor() as usize + 1).min(n);
    Ok(s[rank - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_examples() {
        assert_eq!(median(&[5.0]).unwrap(), 5.0);
        assert_eq!(median(&[1.0, 3.0]).unwrap(), 2.0);
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(percentile_agg(&[1.0, 3.0], 50.0).unwrap(), 2.0);
    }

    #[test]
    fn percentile_rank_rule() {
        assert_eq!(percentile_agg(&[0.0, 0.0, 0.0, 0.0, 1.0], 80.0).unwrap(), 1.0);
        assert_eq!(percentile_agg(&[0.0, 0.0, 0.0, 0.0, 1.0], 79.0).unwrap(), 0.0);
        assert_eq!(percentile_agg(&[4.0, 2.0, 9.0], 0.0).unwrap(), 2.0);
        assert_eq!(percentile_agg(&[4.0, 2.0, 9.0], 100.0).unwrap(), 9.0);
        assert_eq!(percentile_agg(&[7.0], 10.0).unwrap(), 7.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(median(&[]), Err(Error::Empty(_))));
        assert!(matches!(percentile_agg(&[], 80.0), Err(Error::Empty(_))));
        assert!(percentile_agg(&[1.0], 101.0).is_err());
        assert!(ProperAggregator::percentile(-1.0).is_err());
        assert!(ProperAggregator::from_id("percentile", None).is_err());
        assert!(ProperAggregator::from_id("sum", None).is_err());
    }

    #[test]
    fn json_form() {
        let a: ProperAggregator = serde_json::from_str(r#"{"id":"percentile","params":{"p":80.0}}"#).unwrap();
        assert_eq!(a, ProperAggregator::Percentile(80.0));
        let g: ProperAggregator = serde_json::from_str(r#"{"id":"geomean"}"#).unwrap();
        assert_eq!(g, ProperAggregator::Recursive(RecursiveAggregator::GeoMean));
        assert_eq!(serde_json::to_string(&ProperAggregator::Median).unwrap(), r#"{"id":"median"}"#);
    }
}
