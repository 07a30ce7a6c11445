use serde::{Deserialize, Serialize};

/// One reading from one of two scales.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleReading {
    /// 1 or 2.
    pub scale_id: u8,
    /// Minutes since an arbitrary epoch.
    pub time: f64,
    /// Pounds.
    pub weight: f64,
}

/// Calories eaten and weight measured on one day.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DailyLog {
    pub day: i64,
    pub calories: f64,
    pub weight: f64,
}

/// Source of a sighting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Who {
    /// A reconstructed itinerary, identified by name.
    Theory(String),
    Witness(String),
}

impl Who {
    pub fn name(&self) -> &str {
        match self {
            Who::Theory(n) | Who::Witness(n) => n,
        }
    }
}

/// A claim that someone was at a location at a time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sighting {
    pub who: Who,
    /// Minutes.
    pub time: f64,
    /// Index into the travel time table.
    pub location: usize,
}
