//! Incongruity theories: collision conditions, deviations, full models and
//! total proper incongruity.

mod condition;
pub mod config;
mod deviation;
mod incongruity;
mod model;

pub use condition::{Condition, PairArg};
pub use config::TheoryDocument;
pub use deviation::{DeviationFn, DEFAULT_LOG_FLOOR};
pub use incongruity::{
    model_incongruity, total_incongruity, total_incongruity_with, Aspect, AspectBreakdown, Incongruity,
    IncongruityTheory, Regularization,
};
pub use model::{
    aspect_deviations, aspect_deviations_with, build_full_model, colliding_pairs, colliding_pairs_with,
    CollidingPair, FullModel, HypothesisSpec, LinearForm, PointFunction,
};
