//! Incongruity evaluation over modal observations and hypotheses.
//!
//! Observations and hypothetical instances are both formulas asserting a
//! value of an unknown dependence at a data point. An incongruity theory
//! declares which pairs of formulas "collide" and how much each colliding
//! pair deviates; proper aggregation turns the deviations into a single loss.
//! The [`learners`] module re-expresses familiar learners as minimizers of
//! such losses, and [`scenarios`] applies the same machinery to small
//! data-analysis problems.

pub mod aggregation;
pub mod error;
pub mod formula;
pub mod io;
pub mod learners;
pub mod scenarios;
pub mod theory;

pub use error::{Error, Result};
