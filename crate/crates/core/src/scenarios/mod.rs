//! Ready-made theories for a few everyday consistency checks: two bathroom
//! scales, weight against calorie intake, and travel itineraries against
//! witness sightings.
mod dependence;
mod engine;
mod itinerary;
mod records;
mod scales;

pub use dependence::{
    dependence_theory, monotone_dependence_report, AspectReport, DayPair, DependenceConfig, DependenceReport,
};
pub use itinerary::{
    itinerary_report, itinerary_theory, witness_cross_incongruity, ItineraryReport, ItineraryScore, SlackPair,
};
pub use records::{DailyLog, ScaleReading, Sighting, Who};
pub use scales::{scales_report, scales_theory, ScalePair, ScalesConfig, ScalesReport};
