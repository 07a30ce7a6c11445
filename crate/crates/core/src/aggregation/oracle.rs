//! Randomized oracles for the proper-aggregation axioms and for order
//! invariance of the recursive interpretations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::recursive::{recursive_tot, recursive_tot_canonical, RecursiveAggregator};
use super::{Aggregate, ProperAggregator};

#[derive(Clone, Debug)]
pub struct AxiomCheckConfig {
    pub trials: usize,
    /// Multiset sizes are drawn from `1..=size_max`.
    pub size_max: usize,
    pub seed: u64,
    /// Elements are drawn uniformly from `(low, high]`.
    pub low: f64,
    pub high: f64,
    pub tol: f64,
}

impl AxiomCheckConfig {
    pub fn new(trials: usize, size_max: usize, seed: u64) -> Self {
        AxiomCheckConfig {
            trials,
            size_max,
            seed,
            low: -1e3,
            high: 1e3,
            tol: 1e-9,
        }
    }

    pub fn with_domain(mut self, low: f64, high: f64) -> Self {
        self.low = low;
        self.high = high;
        self
    }

    /// Domain where `agg` is defined: nonnegative for Rms, strictly positive
    /// for GeoMean, `(-1e3, 1e3]` otherwise.
    pub fn for_aggregator(agg: &ProperAggregator, trials: usize, size_max: usize, seed: u64) -> Self {
        let cfg = AxiomCheckConfig::new(trials, size_max, seed);
        match agg {
            ProperAggregator::Recursive(RecursiveAggregator::Rms)
            | ProperAggregator::Recursive(RecursiveAggregator::GeoMean) => cfg.with_domain(0.0, 1e3),
            _ => cfg,
        }
    }
}

/// A multiset on which an axiom failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub input: Vec<f64>,
    /// Second multiset for two-sided checks (monotony).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<Vec<f64>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub passed: bool,
    pub checks: usize,
    pub witness: Option<Witness>,
}

impl AxiomResult {
    fn new() -> Self {
        AxiomResult {
            passed: true,
            checks: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checks += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub aggregator: String,
    pub monotony: AxiomResult,
    pub idempotence: AxiomResult,
    pub tautology: AxiomResult,
    /// `min(G) <= TOT(G) <= max(G)`.
    pub bounds: AxiomResult,
    /// `TOT` of n copies of `x` is `x`.
    pub constant: AxiomResult,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.monotony.passed
            && self.idempotence.passed
            && self.tautology.passed
            && self.bounds.passed
            && self.constant.passed
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn draw(rng: &mut ChaCha8Rng, cfg: &AxiomCheckConfig) -> f64 {
    // 1 - u lies in (0, 1], so the draw lies in (low, high]
    let u: f64 = rng.random();
    cfg.low + (cfg.high - cfg.low) * (1.0 - u)
}

/// Checks monotony, idempotence and tautology (plus the derived bounds and
/// constant laws) on random multisets. Failures are reported with the first
/// counterexample, never as errors; an aggregator that returns an error on an
/// input inside the configured domain fails the check that produced it.
pub fn check_proper_axioms(agg: &dyn Aggregate, cfg: &AxiomCheckConfig) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut monotony = AxiomResult::new();
    let mut idempotence = AxiomResult::new();
    let mut tautology = AxiomResult::new();
    let mut bounds = AxiomResult::new();
    let mut constant = AxiomResult::new();
    let tot = |g: &[f64]| agg.aggregate(g).unwrap_or(f64::NAN);
    let trials = cfg.trials.max(1);
    let size_max = cfg.size_max.max(1);

    for trial in 0..trials {
        let n = rng.random_range(1..=size_max);
        let g1: Vec<f64> = (0..n).map(|_| draw(&mut rng, cfg)).collect();
        let t1 = tot(&g1);

        // monotony: an isomorphic image with q(x) >= x, some elements unchanged
        let mut g2: Vec<f64> = g1
            .iter()
            .map(|&x| if rng.random_bool(0.3) { x } else { x + rng.random_range(1e-3..10.0) })
            .collect();
        g2.shuffle(&mut rng);
        let t2 = tot(&g2);
        monotony.record(t2 >= t1 - cfg.tol * 1f64.max(t1.abs()), || Witness {
            trial,
            input: g1.clone(),
            other: Some(g2.clone()),
            detail: format!("TOT(G2) = {t2} < TOT(G1) = {t1} although q(x) >= x"),
        });
        // strict variant: q(x) > x everywhere
        let mut g3: Vec<f64> = g1.iter().map(|&x| x + rng.random_range(1e-3..10.0)).collect();
        g3.shuffle(&mut rng);
        let t3 = tot(&g3);
        monotony.record(t3 > t1, || Witness {
            trial,
            input: g1.clone(),
            other: Some(g3.clone()),
            detail: format!("TOT(G2) = {t3} not above TOT(G1) = {t1} although q(x) > x"),
        });

        // idempotence
        let mut extended = g1.clone();
        extended.push(t1);
        let te = tot(&extended);
        idempotence.record(close(te, t1, cfg.tol), || Witness {
            trial,
            input: g1.clone(),
            other: None,
            detail: format!("TOT(G with TOT(G)) = {te} differs from TOT(G) = {t1}"),
        });

        // tautology, exact
        let x = draw(&mut rng, cfg);
        let ts = tot(&[x]);
        tautology.record(ts == x, || Witness {
            trial,
            input: vec![x],
            other: None,
            detail: format!("TOT({{x}}) = {ts}, expected {x}"),
        });

        let lo = g1.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = g1.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let slack = cfg.tol * 1f64.max(lo.abs()).max(hi.abs());
        bounds.record(t1 >= lo - slack && t1 <= hi + slack, || Witness {
            trial,
            input: g1.clone(),
            other: None,
            detail: format!("TOT(G) = {t1} outside [{lo}, {hi}]"),
        });

        let c = vec![x; n];
        let tc = tot(&c);
        constant.record(close(tc, x, cfg.tol), || Witness {
            trial,
            input: c.clone(),
            other: None,
            detail: format!("TOT of {n} copies of {x} is {tc}"),
        });
    }

    AxiomReport {
        aggregator: agg.label(),
        monotony,
        idempotence,
        tautology,
        bounds,
        constant,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderInvarianceReport {
    pub passed: bool,
    pub permutations: usize,
    /// Largest `|a - b| / max(1, |a|, |b|)` between the original order and a
    /// permutation.
    pub max_discrepancy: f64,
    /// Whether the canonical (sorted) reduction gave bitwise-identical output
    /// on every permutation.
    pub canonical_bit_exact: bool,
    pub tol: f64,
}

/// Evaluates `recursive_tot` under random permutations of `values`.
pub fn check_order_invariance(
    values: &[f64],
    r: RecursiveAggregator,
    permutations: usize,
    seed: u64,
) -> crate::error::Result<OrderInvarianceReport> {
    const TOL: f64 = 1e-9;
    if values.len() < 2 {
        return Err(crate::error::Error::config(
            "order invariance needs at least two elements",
        ));
    }
    let base = recursive_tot(values, r)?;
    let canonical = recursive_tot_canonical(values, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = values.to_vec();
    let mut max_discrepancy = 0f64;
    let mut bit_exact = true;
    for _ in 0..permutations {
        perm.shuffle(&mut rng);
        let v = recursive_tot(&perm, r)?;
        let d = (v - base).abs() / 1f64.max(v.abs()).max(base.abs());
        max_discrepancy = max_discrepancy.max(d);
        bit_exact &= recursive_tot_canonical(&perm, r)?.to_bits() == canonical.to_bits();
    }
    Ok(OrderInvarianceReport {
        passed: max_discrepancy <= TOL && bit_exact,
        permutations,
        max_discrepancy,
        canonical_bit_exact: bit_exact,
        tol: TOL,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderInvarianceSuite {
    pub aggregator: String,
    pub passed: bool,
    pub multisets: usize,
    pub permutations: usize,
    pub max_discrepancy: f64,
    pub canonical_bit_exact: bool,
    /// First multiset that failed, if any.
    pub witness: Option<Vec<f64>>,
}

/// Runs [`check_order_invariance`] on `multisets` random multisets of size
/// `2..=size_max`, drawn from the aggregator's domain.
pub fn check_order_invariance_suite(
    r: RecursiveAggregator,
    multisets: usize,
    size_max: usize,
    permutations: usize,
    seed: u64,
) -> crate::error::Result<OrderInvarianceSuite> {
    if size_max < 2 {
        return Err(crate::error::Error::config("size_max must be at least 2"));
    }
    let cfg = AxiomCheckConfig::for_aggregator(&ProperAggregator::Recursive(r), multisets, size_max, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = OrderInvarianceSuite {
        aggregator: r.name().to_string(),
        passed: true,
        multisets,
        permutations,
        max_discrepancy: 0.0,
        canonical_bit_exact: true,
        witness: None,
    };
    for _ in 0..multisets {
        let n = rng.random_range(2..=size_max);
        let values: Vec<f64> = (0..n).map(|_| draw(&mut rng, &cfg)).collect();
        let rep = check_order_invariance(&values, r, permutations, rng.random())?;
        suite.max_discrepancy = suite.max_discrepancy.max(rep.max_discrepancy);
        suite.canonical_bit_exact &= rep.canonical_bit_exact;
        if !rep.passed && suite.passed {
            suite.passed = false;
            suite.witness = Some(values);
        }
    }
    Ok(suite)
}

/// Deliberately improper aggregator `min(G) - 1`, used to confirm that the
/// axiom oracle reports counterexamples.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinMinusOne;

impl Aggregate for MinMinusOne {
    fn aggregate(&self, values: &[f64]) -> crate::error::Result<f64> {
        if values.is_empty() {
            return Err(crate::error::Error::empty("aggregation of an empty multiset"));
        }
        Ok(values.iter().copied().fold(f64::INFINITY, f64::min) - 1.0)
    }

    fn label(&self) -> String {
        "min_minus_one".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_invariance_suite_passes() {
        for r in RecursiveAggregator::ALL {
            let s = check_order_invariance_suite(r, 20, 30, 10, 5).unwrap();
            assert!(s.passed && s.canonical_bit_exact, "{s:?}");
        }
    }

    #[test]
    fn median_passes() {
        let r = check_proper_axioms(&ProperAggregator::Median, &AxiomCheckConfig::new(1000, 30, 1));
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn mean_passes() {
        let r = check_proper_axioms(&ProperAggregator::MEAN, &AxiomCheckConfig::new(1000, 30, 2));
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn fake_fails_with_witness() {
        let r = check_proper_axioms(&MinMinusOne, &AxiomCheckConfig::new(50, 10, 3));
        assert!(!r.idempotence.passed);
        assert!(!r.tautology.passed);
        assert!(!r.bounds.passed);
        assert!(r.idempotence.witness.is_some());
        assert!(!r.all_passed());
    }

    #[test]
    fn rms_outside_its_domain_fails() {
        let cfg = AxiomCheckConfig::new(100, 10, 4);
        let r = check_proper_axioms(&ProperAggregator::Recursive(RecursiveAggregator::Rms), &cfg);
        assert!(!r.tautology.passed);
    }

    #[test]
    fn order_invariance_examples() {
        let r = check_order_invariance(&[1.0, 2.0, 3.0], RecursiveAggregator::Mean, 6, 0).unwrap();
        assert!(r.passed);
        assert!(r.max_discrepancy <= 1e-15);
        let r = check_order_invariance(&[4.0, 9.0, 16.0], RecursiveAggregator::GeoMean, 12, 0).unwrap();
        assert!(r.passed && r.canonical_bit_exact);
        assert!(check_order_invariance(&[1.0], RecursiveAggregator::Mean, 3, 0).is_err());
    }
}
