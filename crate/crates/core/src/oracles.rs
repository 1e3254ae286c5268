//! Ground-truth engines that check the analytic results without sharing
//! their derivation: central finite differences, exhaustive enumeration of
//! draw sequences, seeded Monte Carlo, and direct evaluation of the two
//! auxiliary inequalities (the pairwise log-ratio sum and the sorted dot
//! product) used in the descent proofs.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, precondition, Result};
use crate::masses::{self, MassVector};

pub mod wide;

pub use wide::Wide;

/// Central-difference step used throughout the checks.
pub const DEFAULT_STEP: f64 = 1e-6;
/// Denominator floor for per-entry relative errors.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-12;
/// Largest `s^m` that [`brute_force_expected_cardinality`] will enumerate.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;
/// Smallest trial count accepted by the Monte Carlo estimator.
pub const MIN_MONTE_CARLO_TRIALS: u64 = 100;

/// `|a − b| / max(|a|, |b|, 1e-12)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(RELATIVE_ERROR_FLOOR)
}

/// Values a probe function may return. `f64` is the usual choice;
/// [`Wide`] keeps the difference of two nearby probes accurate to far below
/// the `f64` rounding floor.
pub trait ProbeValue: Copy {
    /// `(up − down) / spacing`, rounded to `f64` at the end.
    fn central_difference(up: Self, down: Self, spacing: f64) -> f64;
}

impl ProbeValue for f64 {
    fn central_difference(up: f64, down: f64, spacing: f64) -> f64 {
        (up - down) / spacing
    }
}

impl ProbeValue for Wide {
    fn central_difference(up: Wide, down: Wide, spacing: f64) -> f64 {
        ((up - down) / Wide::new(spacing)).to_f64()
    }
}

/// Central differences of `f` at `x` along every coordinate. The divisor
/// is the exact distance between the two rounded probe points, which is
/// `2h` up to rounding of `x_k ± h`.
pub fn central_difference_gradient<T, F>(f: F, x: &[f64], h: f64) -> Result<Vec<f64>>
where
    T: ProbeValue,
    F: Fn(&[f64]) -> T,
{
    if !(h > 0.0 && h.is_finite()) {
        return invalid(format!("step size must be positive, got {h}"));
    }
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(probe.len());
    for k in 0..probe.len() {
        let base = probe[k];
        let (hi, lo) = (base + h, base - h);
        probe[k] = hi;
        let up = f(&probe);
        probe[k] = lo;
        let down = f(&probe);
        probe[k] = base;
        grad.push(T::central_difference(up, down, hi - lo));
    }
    Ok(grad)
}

/// `g_k = [f(z + h·e_k) − f(z − h·e_k)] / 2h`. Every mass must exceed `h`
/// so both probes stay non-negative.
pub fn finite_difference_gradient<T, F>(f: F, z: &MassVector, h: f64) -> Result<Vec<f64>>
where
    T: ProbeValue,
    F: Fn(&MassVector) -> T,
{
    if let Some(k) = z.values().iter().position(|&v| v <= h) {
        return invalid(format!(
            "mass {k} = {} is not above the step size {h}; central differences would leave the orthant",
            z.values()[k]
        ));
    }
    central_difference_gradient(
        |probe| f(&MassVector::new(probe.to_vec()).expect("probes stay in the orthant")),
        z.values(),
        h,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradCheckResult {
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    pub max_relative_error: f64,
    pub step_size: f64,
}

impl GradCheckResult {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_relative_error < tolerance
    }
}

/// Compares an analytic gradient against central differences of `f`.
pub fn grad_check<T, F>(analytic: Vec<f64>, f: F, z: &MassVector, h: f64) -> Result<GradCheckResult>
where
    T: ProbeValue,
    F: Fn(&MassVector) -> T,
{
    let numeric = finite_difference_gradient(f, z, h)?;
    if numeric.len() != analytic.len() {
        return invalid("analytic gradient length does not match the number of states");
    }
    let max_relative_error = analytic
        .iter()
        .zip(&numeric)
        .map(|(&a, &n)| relative_error(a, n))
        .fold(0.0, f64::max);
    Ok(GradCheckResult {
        analytic,
        numeric,
        max_relative_error,
        step_size: h,
    })
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Expected number of distinct states in `m` draws, by summing
/// `P(sequence) · |distinct(sequence)|` over every one of the `s^m` draw
/// sequences. No linearity of expectation is used.
pub fn brute_force_expected_cardinality(z: &MassVector, m: u64) -> Result<f64> {
    if m == 0 {
        return invalid("draw count m must be >= 1");
    }
    let s = z.len() as u64;
    let within_budget = u32::try_from(m)
        .ok()
        .and_then(|m| s.checked_pow(m))
        .is_some_and(|n| n <= ENUMERATION_BUDGET);
    if !within_budget {
        return invalid(format!(
            "enumerating {s}^{m} sequences exceeds the budget of {ENUMERATION_BUDGET}; use the Monte Carlo estimator"
        ));
    }
    let p = masses::normalize(z)?;
    // Heaviest states first, so the largest terms are accumulated first.
    let mut probs: Vec<f64> = p.values().iter().copied().filter(|&v| v > 0.0).collect();
    probs.sort_by(|a, b| b.total_cmp(a));

    struct Odometer<'a> {
        probs: &'a [f64],
        counts: Vec<u32>,
        acc: CompensatedSum,
    }

    impl Odometer<'_> {
        fn visit(&mut self, remaining: u64, prob: f64, distinct: u32) {
            if remaining == 0 {
                self.acc.add(prob * distinct as f64);
                return;
            }
            for state in 0..self.probs.len() {
                let fresh = self.counts[state] == 0;
                self.counts[state] += 1;
                self.visit(remaining - 1, prob * self.probs[state], distinct + fresh as u32);
                self.counts[state] -= 1;
            }
        }
    }

    let mut odometer = Odometer {
        probs: &probs,
        counts: vec![0; probs.len()],
        acc: CompensatedSum::default(),
    };
    odometer.visit(m, 1.0, 0);
    Ok(odometer.acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub standard_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// `3 (c − 1) / trials` with `c` the number of positive masses: roughly
    /// the largest shift in the mean from an event rare enough to go unseen
    /// in every trial. Matters when a sample shows no spread at all.
    pub unseen_event_allowance: f64,
}

impl MonteCarloEstimate {
    /// Whether `value` lies within `k` standard errors (plus the
    /// unseen-event allowance) of the estimate.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (self.estimate - value).abs() <= k * self.standard_error + self.unseen_event_allowance
    }
}

/// Simulates `trials` independent batches of `m` draws and counts the
/// distinct states in each. Deterministic for a fixed seed (ChaCha8).
pub fn monte_carlo_expected_cardinality(
    z: &MassVector,
    m: u64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if m == 0 {
        return invalid("draw count m must be >= 1");
    }
    if trials < MIN_MONTE_CARLO_TRIALS {
        return invalid(format!("need at least {MIN_MONTE_CARLO_TRIALS} trials, got {trials}"));
    }
    masses::normalize(z)?;
    let dist = WeightedIndex::new(z.values())
        .map_err(|e| crate::Error::InvalidInput(format!("cannot sample masses: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // stamp[k] == trial + 1 marks state k as seen in this trial
    let mut stamp = vec![0u64; z.len()];
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for trial in 0..trials {
        let mut distinct = 0u32;
        for _ in 0..m {
            let k = dist.sample(&mut rng);
            if stamp[k] != trial + 1 {
                stamp[k] = trial + 1;
                distinct += 1;
            }
        }
        let x = distinct as f64;
        let n = (trial + 1) as f64;
        let delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (trials - 1) as f64;
    Ok(MonteCarloEstimate {
        estimate: mean,
        standard_error: (variance / trials as f64).sqrt(),
        trials,
        seed,
        unseen_event_allowance: 3.0 * (z.support_size() as f64 - 1.0) / trials as f64,
    })
}

/// `Σ_j Σ_i a_i ln(a_i / a_j)` over the positive entries of `a`.
///
/// Evaluated as the pairwise sum `Σ_{i<j} (a_i − a_j)(ln a_i − ln a_j)`,
/// which equals the double sum and has no cancelling terms: the value is
/// exactly zero for identical entries and positive otherwise. Zero
/// entries are dropped since `ln(a_i / 0)` is undefined.
pub fn lemma_log_ratio_sum(a: &[f64]) -> Result<f64> {
    if a.len() < 2 {
        return invalid("need at least two values");
    }
    if a.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return invalid("values must be finite and non-negative");
    }
    let positive: Vec<f64> = a.iter().copied().filter(|&v| v > 0.0).collect();
    if positive.is_empty() {
        return invalid("need at least one positive value");
    }
    let logs: Vec<f64> = positive.iter().map(|v| v.ln()).collect();
    let mut acc = CompensatedSum::default();
    for i in 0..positive.len() {
        for j in (i + 1)..positive.len() {
            acc.add((positive[i] - positive[j]) * (logs[i] - logs[j]));
        }
    }
    Ok(acc.value())
}

/// Minimal number of closed intervals `[c − eps, c + eps]`, with centers
/// restricted to the integer grid, whose union contains `[a, b]`. All
/// arguments are in grid units. Found by iterative deepening over center
/// choices: each new center must touch the covered prefix, and a branch is
/// abandoned once the remaining centers cannot reach `b` even at full
/// stride.
pub fn brute_force_interval_cover(a: i64, b: i64, eps: i64) -> Result<u64> {
    if b <= a {
        return invalid(format!("need b > a, got [{a}, {b}]"));
    }
    if eps <= 0 {
        return invalid("eps must be positive");
    }

    fn search(reach: i64, first: bool, remaining: u64, b: i64, eps: i64) -> bool {
        if !first && reach >= b {
            return true;
        }
        if remaining == 0 || reach + 2 * eps * (remaining as i64) < b {
            return false;
        }
        // Any center c with c - eps <= reach extends (or, for the first
        // center, contains) the covered prefix.
        let lowest = if first { reach - eps } else { reach - eps + 1 };
        (lowest..=reach + eps).rev().any(|c| {
            let next = c + eps;
            search(next, false, remaining - 1, b, eps)
        })
    }

    let mut k = 1u64;
    loop {
        if search(a, true, k, b, eps) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Absolute tolerance on `Σ x` for [`lemma_dot_product`].
pub const ZERO_SUM_TOLERANCE: f64 = 1e-12;

/// `w · x` after checking the sorted-dot-product preconditions:
///
/// * `w` is non-negative, sorted descending and not constant;
/// * `x` sums to zero, is not constant, and is a run of non-negative
///   entries followed by a non-empty run of negative entries.
///
/// Under these conditions `w · x ≥ 0`. The value is strictly positive
/// unless `w` is constant across every index where `x` is non-zero, e.g.
/// `w = [2, 1, 1]`, `x = [0, 1, −1]` gives exactly zero.
pub fn lemma_dot_product(w: &[f64], x: &[f64]) -> Result<f64> {
    if w.len() != x.len() {
        return precondition(format!("length mismatch: |w| = {}, |x| = {}", w.len(), x.len()));
    }
    if w.len() < 2 {
        return precondition("vectors need at least two entries");
    }
    if w.iter().chain(x).any(|v| !v.is_finite()) {
        return precondition("entries must be finite");
    }
    if let Some(i) = w.iter().position(|&v| v < 0.0) {
        return precondition(format!("w[{i}] is negative"));
    }
    if let Some(i) = w.windows(2).position(|pair| pair[0] < pair[1]) {
        return precondition(format!("w is not sorted descending at index {i}"));
    }
    if w.iter().all(|&v| v == w[0]) {
        return precondition("w is uniform");
    }
    if x.iter().all(|&v| v == x[0]) {
        return precondition("x is uniform");
    }
    let sum: f64 = x.iter().sum();
    if sum.abs() > ZERO_SUM_TOLERANCE {
        return precondition(format!("x sums to {sum}, not 0"));
    }
    let split = x.iter().position(|&v| v < 0.0).unwrap_or(x.len());
    if split == 0 || split == x.len() {
        return precondition("x must start with a non-negative entry and contain a negative entry");
    }
    if let Some(i) = x[split..].iter().position(|&v| v >= 0.0) {
        return precondition(format!(
            "x[{}] is non-negative after the negative run starts at {split}",
            split + i
        ));
    }
    Ok(w.iter().zip(x).map(|(a, b)| a * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn mv(v: &[f64]) -> MassVector {
        MassVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fd_examples() {
        let ent = |z: &MassVector| masses::entropy(z).unwrap();
        let g = finite_difference_gradient(ent, &mv(&[1.0, 1.0, 1.0]), 1e-6).unwrap();
        assert!(g.iter().all(|v| v.abs() < 1e-8));

        let g = finite_difference_gradient(ent, &mv(&[1.0, 2.0]), 1e-6).unwrap();
        assert!((g[0] - 0.154_032_706_791_098_96).abs() < 1e-8);
        assert!((g[1] + 0.077_016_353_395_549_48).abs() < 1e-8);

        let u2 = |z: &MassVector| masses::expected_cardinality(z, 2).unwrap();
        let g = finite_difference_gradient(u2, &mv(&[1.0, 2.0]), 1e-6).unwrap();
        assert!((g[0] - 4.0 / 27.0).abs() < 1e-8);
        assert!((g[1] + 2.0 / 27.0).abs() < 1e-8);
    }

    #[test]
    fn fd_rejects_masses_at_or_below_step() {
        let ent = |z: &MassVector| masses::entropy(z).unwrap();
        assert!(matches!(
            finite_difference_gradient(ent, &mv(&[0.0, 1.0]), 1e-6),
            Err(Error::InvalidInput(_))
        ));
        assert!(finite_difference_gradient(ent, &mv(&[1e-6, 1.0]), 1e-6).is_err());
    }

    #[test]
    fn relative_error_floor() {
        assert_eq!(relative_error(0.0, 0.0), 0.0);
        assert_eq!(relative_error(1e-13, 0.0), 1e-13 / 1e-12);
        assert_eq!(relative_error(2.0, 1.0), 0.5);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_expected_cardinality(&mv(&[1.0, 1.0]), 2).unwrap(), 1.5);
        assert_eq!(brute_force_expected_cardinality(&mv(&[0.0, 1.0]), 3).unwrap(), 1.0);
        // exact value 65/32
        let bf = brute_force_expected_cardinality(&mv(&[1.0, 1.0, 2.0]), 3).unwrap();
        assert!((bf - 2.03125).abs() < 1e-15);
        let closed = masses::expected_cardinality(&mv(&[1.0, 1.0, 2.0]), 3).unwrap();
        assert!((bf - closed).abs() < 1e-12);
    }

    #[test]
    fn brute_force_budget() {
        assert!(brute_force_expected_cardinality(&mv(&[1.0; 10]), 7).is_ok());
        assert!(matches!(
            brute_force_expected_cardinality(&mv(&[1.0; 10]), 8),
            Err(Error::InvalidInput(_))
        ));
        assert!(brute_force_expected_cardinality(&mv(&[1.0; 2]), 1000).is_err());
        assert!(brute_force_expected_cardinality(&mv(&[1.0; 2]), 0).is_err());
    }

    #[test]
    fn monte_carlo_examples() {
        let est = monte_carlo_expected_cardinality(&mv(&[1.0, 1.0]), 2, 100_000, 7).unwrap();
        assert!(est.covers(1.5, 4.0), "{est:?}");
        assert_eq!(
            est,
            monte_carlo_expected_cardinality(&mv(&[1.0, 1.0]), 2, 100_000, 7).unwrap()
        );

        let est = monte_carlo_expected_cardinality(&mv(&[0.0, 3.0, 0.0]), 25, 500, 1).unwrap();
        assert_eq!(est.estimate, 1.0);
        assert_eq!(est.standard_error, 0.0);

        let z = mv(&[1.0; 50]);
        let est = monte_carlo_expected_cardinality(&z, 50, 100_000, 11).unwrap();
        let closed = masses::expected_cardinality(&z, 50).unwrap();
        assert!(est.covers(closed, 4.0), "{est:?} vs {closed}");

        assert!(monte_carlo_expected_cardinality(&mv(&[1.0, 1.0]), 2, 99, 0).is_err());
    }

    #[test]
    fn brute_force_cover_examples() {
        // [0, 1] with eps = 0.5 and 0.25, in units of 0.05
        assert_eq!(brute_force_interval_cover(0, 20, 10).unwrap(), 1);
        assert_eq!(brute_force_interval_cover(0, 20, 5).unwrap(), 2);
        // [0, 4] with eps = 0.5, in units of 0.25
        assert_eq!(brute_force_interval_cover(0, 16, 2).unwrap(), 4);
        assert_eq!(brute_force_interval_cover(0, 17, 2).unwrap(), 5);
        assert_eq!(brute_force_interval_cover(-3, 4, 1).unwrap(), 4);
        assert!(brute_force_interval_cover(2, 2, 1).is_err());
    }

    #[test]
    fn log_ratio_sum_examples() {
        let v = lemma_log_ratio_sum(&[1.0, 2.0]).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15);
        assert_eq!(lemma_log_ratio_sum(&[3.0, 3.0, 3.0]).unwrap(), 0.0);
        assert_eq!(lemma_log_ratio_sum(&[0.0, 3.0]).unwrap(), 0.0);
        assert!(lemma_log_ratio_sum(&[0.0, 0.0]).is_err());
        assert!(lemma_log_ratio_sum(&[1.0]).is_err());
    }

    #[test]
    fn log_ratio_sum_matches_double_sum() {
        let a = [0.3, 2.0, 5.5, 0.0, 1.25];
        let pos: Vec<f64> = a.iter().copied().filter(|&v| v > 0.0).collect();
        let direct: f64 = pos
            .iter()
            .flat_map(|&aj| pos.iter().map(move |&ai| ai * (ai / aj).ln()))
            .sum();
        assert!((lemma_log_ratio_sum(&a).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn dot_product_examples() {
        assert_eq!(lemma_dot_product(&[3.0, 2.0, 1.0], &[1.0, 0.0, -1.0]).unwrap(), 2.0);
        assert_eq!(lemma_dot_product(&[2.0, 1.0], &[0.5, -0.5]).unwrap(), 0.5);
        assert_eq!(lemma_dot_product(&[2.0, 1.0, 1.0], &[0.0, 1.0, -1.0]).unwrap(), 0.0);
    }

    #[test]
    fn dot_product_preconditions() {
        let bad: [(&[f64], &[f64], &str); 8] = [
            (&[3.0, 2.0, 1.0], &[1.0, 0.0, -0.5], "sums to"),
            (&[3.0, 2.0], &[1.0, 0.0, -1.0], "length"),
            (&[1.0, 2.0, 3.0], &[1.0, 0.0, -1.0], "sorted"),
            (&[1.0, 1.0, 1.0], &[1.0, 0.0, -1.0], "w is uniform"),
            (&[3.0, 2.0, -1.0], &[1.0, 0.0, -1.0], "negative"),
            (&[3.0, 2.0, 1.0], &[-1.0, 0.0, 1.0], "start with"),
            (&[3.0, 2.0, 1.0, 0.0], &[1.0, -1.0, 1.0, -1.0], "after the negative run"),
            (&[3.0, 2.0, 1.0], &[0.0, 0.0, 0.0], "x is uniform"),
        ];
        for (w, x, needle) in bad {
            match lemma_dot_product(w, x) {
                Err(Error::Precondition(msg)) => assert!(msg.contains(needle), "{msg}"),
                other => panic!("expected precondition error for {w:?} {x:?}, got {other:?}"),
            }
        }
    }
}
