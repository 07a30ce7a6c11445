use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_LOG_FLOOR: f64 = 1e-12;

fn default_log_floor() -> f64 {
    DEFAULT_LOG_FLOOR
}

/// Deviation `t(rho_y, rho_x)` of a colliding pair: nondecreasing in `rho_y`,
/// nonincreasing in `rho_x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum DeviationFn {
    RhoY,
    RhoYSquared,
    /// `max(0, rho_y - c)`: zero inside the tolerance `c`.
    HingeAbove { c: f64 },
    /// `ln(max(rho_y, floor))`. Negative below 1.
    LogRhoY {
        #[serde(default = "default_log_floor")]
        floor: f64,
    },
    /// `max(0, rho_y - rho_x)`: how far a required travel time exceeds the
    /// time actually available.
    TravelSlack,
}

impl DeviationFn {
    pub fn log_rho_y() -> Self {
        DeviationFn::LogRhoY {
            floor: DEFAULT_LOG_FLOOR,
        }
    }

    pub fn apply(&self, rho_y: f64, rho_x: f64) -> f64 {
        match self {
            DeviationFn::RhoY => rho_y,
            DeviationFn::RhoYSquared => rho_y * rho_y,
            DeviationFn::HingeAbove { c } => (rho_y - c).max(0.0),
            DeviationFn::LogRhoY { floor } => rho_y.max(*floor).ln(),
            DeviationFn::TravelSlack => (rho_y - rho_x).max(0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DeviationFn::HingeAbove { c } if !(c.is_finite() && *c >= 0.0) => {
                Err(Error::config(format!("hinge tolerance must be finite and >= 0, got {c}")))
            }
            DeviationFn::LogRhoY { floor } if !(floor.is_finite() && *floor > 0.0) => {
                Err(Error::config(format!("log floor must be finite and > 0, got {floor}")))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(DeviationFn::HingeAbove { c: 1.0 }.apply(0.6, 0.0), 0.0);
        assert_eq!(DeviationFn::HingeAbove { c: 1.0 }.apply(2.0, 0.0), 1.0);
        assert_eq!(DeviationFn::TravelSlack.apply(15.0, 10.0), 5.0);
        assert_eq!(DeviationFn::TravelSlack.apply(10.0, 10.0), 0.0);
        assert_eq!(DeviationFn::RhoYSquared.apply(3.0, 100.0), 9.0);
        assert!((DeviationFn::log_rho_y().apply(0.5, 0.0) - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(DeviationFn::log_rho_y().apply(0.0, 0.0), DEFAULT_LOG_FLOOR.ln());
    }

    #[test]
    fn json_params_default() {
        let d: DeviationFn = serde_json::from_str(r#"{"id":"log_rho_y","params":{}}"#).unwrap();
        assert_eq!(d, DeviationFn::log_rho_y());
        let h: DeviationFn = serde_json::from_str(r#"{"id":"hinge_above","params":{"c":1.0}}"#).unwrap();
        assert_eq!(h, DeviationFn::HingeAbove { c: 1.0 });
        assert!(DeviationFn::HingeAbove { c: -1.0 }.validate().is_err());
        assert!(DeviationFn::LogRhoY { floor: 0.0 }.validate().is_err());
    }
}
