//! Proper aggregation of multisets of reals.

pub mod oracle;
mod proper;
pub mod recursive;
mod total;

pub use oracle::{
    check_order_invariance, check_order_invariance_suite, check_proper_axioms, AxiomCheckConfig, AxiomReport, AxiomResult,
    MinMinusOne, OrderInvarianceReport, OrderInvarianceSuite, Witness,
};
pub use proper::{median, percentile_agg, ProperAggregator};
pub use recursive::{recursive_tot, recursive_tot_canonical, recursive_tot_parallel, RecursiveAggregator};
pub use total::{AspectValue, TotalAggregator};

use crate::error::Result;

/// Any multiset-to-real operator. Implemented by the built-in proper
/// aggregators and by test doubles fed to the axiom oracle.
pub trait Aggregate {
    fn aggregate(&self, values: &[f64]) -> Result<f64>;

    fn label(&self) -> String;
}

/// How reductions are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMode {
    /// Sequential reduction over the sorted multiset; bitwise reproducible.
    #[default]
    BitExact,
    /// Parallel reduction; agrees with `BitExact` to about 1e-9 relative.
    Fast,
}
