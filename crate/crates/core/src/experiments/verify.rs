//! Seeded sweep over every property the crate claims: gradient signs and
//! ordering, the one-step effects of a descent step, the decrease bound,
//! finite termination, the auxiliary inequalities, and the continuous
//! identities. Each check draws from its own generator
//! (`record_seed(seed, check_index)`), so checks run in parallel and the
//! output is still a pure function of `(trials, seed, mutation)`.

use rand::Rng;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::{
    lemma_dot_pair, lemma_log_ratio_vector, no_clamp_learning_rate, random_masses,
    random_non_uniform_masses, with_random_zeros,
};
use super::{record_seed, rng_from_seed};
use crate::continuous::{self, DiagonalGaussian, IntervalUniform, SampleCloud};
use crate::descent::{self, DescentConfig, TerminationReason};
use crate::error::Result;
use crate::masses::{self, MassVector};
use crate::oracles::{self, wide};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub check_name: String,
    pub trials: u64,
    pub failures: u64,
    /// Inputs of the first failing trial; empty when the check passed.
    pub first_counterexample: String,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Deliberate defects used to confirm the sweep can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mutation {
    #[default]
    None,
    /// Negate the entropy gradient handed to the gradient checks.
    FlipGradientSign,
}

struct Harness {
    mutation: Mutation,
}

impl Harness {
    fn gradient(&self, z: &MassVector) -> Vec<f64> {
        let g = masses::entropy_gradient(z).expect("sweep inputs have positive mass");
        match self.mutation {
            Mutation::None => g,
            Mutation::FlipGradientSign => g.into_iter().map(|v| -v).collect(),
        }
    }
}

struct Tally {
    name: &'static str,
    trials: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            trials: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn into_report(self) -> InvariantReport {
        InvariantReport {
            check_name: self.name.to_string(),
            trials: self.trials,
            failures: self.failures,
            first_counterexample: self.first.unwrap_or_default(),
        }
    }
}

type Check = fn(&Harness, &mut ChaCha8Rng, u64) -> Tally;

/// Every check, in report order.
const CHECKS: &[(&str, Check)] = &[
    ("masses.entropy_gradient_vs_finite_differences", entropy_gradient_fd),
    ("masses.entropy_gradient_two_forms_agree", entropy_gradient_forms),
    ("masses.extreme_masses_gradient_signs", extreme_gradient_signs),
    ("masses.decrease_condition_matches_gradient_sign", decrease_condition),
    ("masses.gradient_strictly_decreasing_in_mass", gradient_order),
    ("masses.gradient_sum_positive", gradient_sum_positive),
    ("masses.equal_masses_equal_gradients", equal_masses_equal_gradients),
    ("masses.expected_cardinality_bounds", expected_cardinality_bounds),
    ("masses.expected_cardinality_vs_enumeration", expected_cardinality_enumeration),
    ("masses.expected_cardinality_gradient_vs_finite_differences", expected_cardinality_gradient_fd),
    ("descent.mass_order_preserved_gaps_widen", mass_order_preserved),
    ("descent.probability_order_preserved", probability_order_preserved),
    ("descent.extreme_probabilities_move_apart", extreme_probabilities),
    ("descent.total_mass_decreases", total_mass_decreases),
    ("descent.entropy_decreases", entropy_decreases),
    ("descent.expected_cardinality_decreases", expected_cardinality_decreases),
    ("descent.decrease_bound_sound", decrease_bound_sound),
    ("descent.decrease_bound_factors_monotone", decrease_bound_monotone),
    ("descent.finite_termination", finite_termination),
    ("descent.zero_masses_stick", zero_stickiness),
    ("descent.clamp_reduces_cardinality", clamp_reduces_cardinality),
    ("oracles.monte_carlo_within_4_standard_errors", monte_carlo_agreement),
    ("oracles.log_ratio_sum_positive", log_ratio_sum_positive),
    ("oracles.sorted_dot_product_positive", sorted_dot_product_positive),
    ("continuous.gaussian_entropy_monotone", gaussian_monotone),
    ("continuous.contract_step_mean_and_variance", contract_identities),
    ("continuous.variance_gradient_vs_finite_differences", variance_gradient_fd),
    ("continuous.interval_cover_vs_brute_force", interval_cover),
    ("continuous.uniform_range_descent", range_descent),
];

/// Names of every check, in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

pub fn verify_corollaries(trials: u64, seed: u64) -> Result<Vec<InvariantReport>> {
    verify_corollaries_with(trials, seed, Mutation::None)
}

/// Runs every check with `trials` random instances (some checks scale this
/// up or cap it; see the report's `trials` field for the actual count).
pub fn verify_corollaries_with(trials: u64, seed: u64, mutation: Mutation) -> Result<Vec<InvariantReport>> {
    if trials == 0 {
        return crate::error::invalid("trials must be >= 1");
    }
    run_checks(trials, seed, mutation, |_| true)
}

/// Runs only the named checks, in report order. A check yields the same
/// report here as in the full sweep. Unknown names are an error.
pub fn verify_selected(names: &[&str], trials: u64, seed: u64) -> Result<Vec<InvariantReport>> {
    if let Some(bad) = names.iter().find(|n| !CHECKS.iter().any(|(c, _)| c == *n)) {
        return crate::error::invalid(format!("unknown check {bad:?}"));
    }
    if trials == 0 {
        return crate::error::invalid("trials must be >= 1");
    }
    run_checks(trials, seed, Mutation::None, |name| names.contains(&name))
}

fn run_checks(
    trials: u64,
    seed: u64,
    mutation: Mutation,
    keep: impl Fn(&str) -> bool + Sync,
) -> Result<Vec<InvariantReport>> {
    let harness = Harness { mutation };
    Ok(CHECKS
        .par_iter()
        .enumerate()
        .filter(|(_, (name, _))| keep(name))
        .map(|(i, (name, check))| {
            let mut rng = rng_from_seed(record_seed(seed, i as u64));
            let mut tally = check(&harness, &mut rng, trials);
            tally.name = name;
            tally.into_report()
        })
        .collect())
}

fn show(v: &[f64]) -> String {
    serde_json::to_string(v).expect("finite floats serialize")
}

/// Largest entrywise difference relative to the largest entry of `a`;
/// entries near zero come from cancellation and carry no relative accuracy.
fn gradient_relative_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(oracles::RELATIVE_ERROR_FLOOR);
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

fn argsort(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    idx
}

fn argmin(v: &[f64]) -> usize {
    argsort(v)[0]
}

fn argmax(v: &[f64]) -> usize {
    *argsort(v).last().expect("non-empty")
}

fn non_uniform(rng: &mut ChaCha8Rng) -> MassVector {
    random_non_uniform_masses(rng, 2, 12, 0.05, 10.0)
}

fn entropy_gradient_fd(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = random_masses(rng, 2, 12, 0.1, 10.0);
        let res = oracles::grad_check(
            h.gradient(&z),
            |z| wide::entropy(z.values()),
            &z,
            oracles::DEFAULT_STEP,
        )
        .expect("masses exceed the step");
        t.record(res.max_relative_error < 1e-6, || {
            format!("z={} max_rel_err={:e}", show(z.values()), res.max_relative_error)
        });
    }
    t
}

fn entropy_gradient_forms(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = random_masses(rng, 2, 12, 0.1, 10.0);
        let a = h.gradient(&z);
        let b = masses::entropy_gradient_probability_form(&z).expect("positive mass");
        let err = gradient_relative_error(&a, &b);
        t.record(err < 1e-10, || format!("z={} rel_err={err:e}", show(z.values())));
    }
    t
}

fn extreme_gradient_signs(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = non_uniform(rng);
        let g = h.gradient(&z);
        let (lo, hi) = (argmin(z.values()), argmax(z.values()));
        t.record(g[lo] > 0.0 && g[hi] < 0.0, || {
            format!("z={} grad={}", show(z.values()), show(&g))
        });
    }
    t
}

fn decrease_condition(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = non_uniform(rng);
        let g = h.gradient(&z);
        let ok = (0..z.len()).all(|k| masses::mass_decrease_condition(&z, k).expect("valid index") == (g[k] > 0.0));
        t.record(ok, || format!("z={} grad={}", show(z.values()), show(&g)));
    }
    t
}

fn gradient_order(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = non_uniform(rng);
        let g = h.gradient(&z);
        let v = z.values();
        let ok = (0..v.len()).all(|k| (0..v.len()).all(|j| v[k] >= v[j] || g[k] > g[j]));
        t.record(ok, || format!("z={} grad={}", show(v), show(&g)));
    }
    t
}

fn gradient_sum_positive(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = non_uniform(rng);
        let sum: f64 = h.gradient(&z).iter().sum();
        t.record(sum > 0.0, || format!("z={} sum={sum:e}", show(z.values())));
    }
    t
}

fn equal_masses_equal_gradients(h: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let mut v = random_masses(rng, 2, 12, 0.05, 10.0).into_inner();
        let k = rng.random_range(1..v.len());
        v[k] = v[0];
        let z = MassVector::new(v.clone()).expect("valid");
        let g = h.gradient(&z);

        let mut perm: Vec<usize> = (0..v.len()).collect();
        perm.shuffle(rng);
        let permuted = MassVector::new(perm.iter().map(|&i| v[i]).collect()).expect("valid");
        let gp = h.gradient(&permuted);
        let expected: Vec<f64> = perm.iter().map(|&i| g[i]).collect();

        let ok = g[k] == g[0] && gradient_relative_error(&gp, &expected) < 1e-12;
        t.record(ok, || format!("z={} perm={perm:?}", show(&v)));
    }
    t
}

fn expected_cardinality_bounds(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let base = random_masses(rng, 1, 12, 0.05, 10.0);
        let zeros = rng.random_range(0..base.len());
        let z = with_random_zeros(rng, &base, zeros);
        let card = masses::cardinality(&z, 0.0) as f64;
        let us: Vec<f64> = (1..=30)
            .map(|m| masses::expected_cardinality(&z, m).expect("valid"))
            .collect();
        let bounded = us
            .iter()
            .enumerate()
            .all(|(i, &u)| u >= 1.0 - 1e-12 && u <= card.min((i + 1) as f64) + 1e-12);
        let monotone = us.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        let first = (us[0] - 1.0).abs() < 1e-12;
        t.record(bounded && monotone && first, || {
            format!("z={} u={}", show(z.values()), show(&us))
        });
    }
    t
}

fn expected_cardinality_enumeration(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    let per_pair = trials.min(100);
    for s in 1..=5usize {
        for m in 1..=5u64 {
            for _ in 0..per_pair {
                let base = random_masses(rng, s, s, 0.05, 10.0);
                let zeros = if s > 2 && rng.random_bool(0.2) { 1 } else { 0 };
                let z = with_random_zeros(rng, &base, zeros);
                let closed = masses::expected_cardinality(&z, m).expect("valid");
                let brute = oracles::brute_force_expected_cardinality(&z, m).expect("within budget");
                t.record((closed - brute).abs() < 1e-12, || {
                    format!("z={} m={m} closed={closed} enumerated={brute}", show(z.values()))
                });
            }
        }
    }
    t
}

fn expected_cardinality_gradient_fd(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = random_masses(rng, 2, 12, 0.1, 10.0);
        let m = rng.random_range(1..=20u64);
        let analytic = masses::expected_cardinality_gradient(&z, m).expect("valid");
        let res = oracles::grad_check(
            analytic,
            |z| wide::expected_cardinality(z.values(), m),
            &z,
            oracles::DEFAULT_STEP,
        )
        .expect("masses exceed the step");
        t.record(res.max_relative_error < 1e-6, || {
            format!("z={} m={m} max_rel_err={:e}", show(z.values()), res.max_relative_error)
        });
    }
    t
}

/// Non-uniform masses, the per-trial no-clamp rate, and the stepped masses.
fn one_step(rng: &mut ChaCha8Rng) -> (MassVector, f64, MassVector) {
    let z = non_uniform(rng);
    let lr = no_clamp_learning_rate(&z);
    let (next, clamped) = descent::step(&z, lr).expect("valid step");
    debug_assert!(clamped.is_empty());
    (z, lr, next)
}

fn mass_order_preserved(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        let order = argsort(z.values());
        let same_order = order == argsort(next.values());
        let gaps_widen = order.windows(2).all(|w| {
            let before = z.values()[w[1]] - z.values()[w[0]];
            let after = next.values()[w[1]] - next.values()[w[0]];
            before == 0.0 || after >= before
        });
        t.record(same_order && gaps_widen, || format!("z={} lr={lr:e}", show(z.values())));
    }
    t
}

fn probability_order_preserved(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        let p = masses::normalize(&z).expect("valid");
        let q = masses::normalize(&next).expect("valid");
        t.record(argsort(p.values()) == argsort(q.values()), || {
            format!("z={} lr={lr:e}", show(z.values()))
        });
    }
    t
}

fn extreme_probabilities(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        let p = masses::normalize(&z).expect("valid");
        let q = masses::normalize(&next).expect("valid");
        let (lo, hi) = (argmin(z.values()), argmax(z.values()));
        let moved_apart = q.values()[lo] < p.values()[lo] && q.values()[hi] > p.values()[hi];

        // Δp in ascending-mass order: a non-positive run, then a positive run.
        let dp = masses::probability_change(&z, lr).expect("no clamp at this rate");
        let ordered: Vec<f64> = argsort(z.values()).iter().map(|&i| dp[i]).collect();
        let split = ordered.iter().position(|&d| d > 0.0).unwrap_or(ordered.len());
        let shaped = split > 0 && split < ordered.len() && ordered[split..].iter().all(|&d| d > 0.0);
        let sums_to_zero = dp.iter().sum::<f64>().abs() < 1e-12;

        t.record(moved_apart && shaped && sums_to_zero, || {
            format!("z={} lr={lr:e} dp={}", show(z.values()), show(&dp))
        });
    }
    t
}

fn total_mass_decreases(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        t.record(next.total() < z.total(), || format!("z={} lr={lr:e}", show(z.values())));
    }
    t
}

fn entropy_decreases(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        let before = masses::entropy(&z).expect("valid");
        let after = masses::entropy(&next).expect("valid");
        t.record(after < before, || format!("z={} lr={lr:e}", show(z.values())));
    }
    t
}

/// Draw counts at which the one-step decrease of `U` is checked.
pub const DECREASE_DRAW_COUNTS: [u64; 5] = [2, 3, 5, 10, 50];

fn expected_cardinality_decreases(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        // U(z̃) < U(z) is compared as Σ(1 − p̃)^m > Σ(1 − p)^m, which is the
        // same inequality without the cancellation in s − Σ(1 − p)^m.
        let ok = DECREASE_DRAW_COUNTS.iter().all(|&m| {
            let before = masses::expected_missed_states(&z, m).expect("valid");
            let after = masses::expected_missed_states(&next, m).expect("valid");
            let u_before = masses::expected_cardinality(&z, m).expect("valid");
            let u_after = masses::expected_cardinality(&next, m).expect("valid");
            after > before && u_after <= u_before
        });
        t.record(ok, || format!("z={} lr={lr:e}", show(z.values())));
    }
    t
}

fn decrease_bound_sound(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let (z, lr, next) = one_step(rng);
        let bound = descent::smallest_probability_decrease_bound(&z, lr).expect("preconditions hold");
        let i = argmin(z.values());
        let actual = masses::normalize(&z).expect("valid").values()[i]
            - masses::normalize(&next).expect("valid").values()[i];
        t.record(bound > 0.0 && bound < actual, || {
            format!("z={} lr={lr:e} bound={bound:e} actual={actual:e}", show(z.values()))
        });
    }
    t
}

fn decrease_bound_monotone(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    while t.trials < trials {
        let z0 = non_uniform(rng);
        let lr = 0.1 * no_clamp_learning_rate(&z0);
        let mut z = z0.clone();
        let mut factors = Vec::new();
        for _ in 0..20 {
            match descent::decrease_bound_factors(&z, lr) {
                Ok(f) => factors.push(f),
                Err(_) => break,
            }
            z = descent::step(&z, lr).expect("valid").0;
        }
        let ok = factors.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.smallest_index == b.smallest_index
                && b.c < a.c
                && b.smallest_probability < a.smallest_probability
                && b.ratio > a.ratio
                && b.value() >= a.value()
        });
        // near-uniform starts can reach a clamp after one step; no pair to compare
        if factors.len() < 2 {
            continue;
        }
        t.record(ok, || {
            format!("z0={} lr={lr:e} windows={}", show(z0.values()), factors.len())
        });
    }
    t
}

fn finite_termination(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials.min(200) {
        let z = random_non_uniform_masses(rng, 2, 8, 0.05, 10.0);
        let lr = 0.05 * z.total() / z.len() as f64;
        let mut cfg = DescentConfig::new(lr);
        cfg.record_stride = u64::MAX;

        // Along the whole run, at every step without a clamp: the bound lies
        // below the actual fall of the smallest probability, and the ratio
        // diagnostic does not shrink.
        let mut violation: Option<String> = None;
        let traj = descent::run_with_observer(&z, &cfg, |before, after, clamped| {
            if violation.is_some() || !clamped.is_empty() || before.support_size() < 2 {
                return;
            }
            let Ok(f) = descent::decrease_bound_factors(before, lr) else {
                return;
            };
            let i = f.smallest_index;
            let actual = before.values()[i] / before.total() - after.values()[i] / after.total();
            let ratio_before = descent::ratio_diagnostic(before).expect("two positive masses");
            let ratio_after = descent::ratio_diagnostic(after).expect("no state was lost");
            if f.value() > actual || f.value().is_nan() || ratio_after < ratio_before {
                violation = Some(format!(
                    "before={} bound={:e} actual={actual:e} ratio {ratio_before} -> {ratio_after}",
                    show(before.values()),
                    f.value()
                ));
            }
        })
        .expect("valid run");
        let traj_ok = violation.is_none();
        let terminated = traj.termination_reason == TerminationReason::CardinalityOne && traj.last().cardinality == 1;
        t.record(terminated && traj_ok, || {
            format!(
                "z={} steps={} reason={} {}",
                show(z.values()),
                traj.steps_taken,
                traj.termination_reason.as_str(),
                violation.unwrap_or_default()
            )
        });
    }
    t
}

fn zero_stickiness(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let base = random_non_uniform_masses(rng, 3, 12, 0.05, 10.0);
        let zeros = rng.random_range(1..=base.len() - 2);
        let z = with_random_zeros(rng, &base, zeros);
        let mut cfg = DescentConfig::new(no_clamp_learning_rate(&z));
        cfg.max_steps = 50;
        cfg.record_stride = u64::MAX;
        let mut ok = true;
        descent::run_with_observer(&z, &cfg, |before, after, _| {
            ok &= before
                .values()
                .iter()
                .zip(after.values())
                .all(|(&b, &a)| b != 0.0 || a == 0.0);
        })
        .expect("valid run");
        t.record(ok, || format!("z={}", show(z.values())));
    }
    t
}

fn clamp_reduces_cardinality(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let z = non_uniform(rng);
        let g = masses::entropy_gradient(&z).expect("valid");
        let i = argmin(z.values());
        // twice the rate that takes the smallest mass exactly to zero
        let lr = 2.0 * z.values()[i] / g[i];
        let (next, clamped) = descent::step(&z, lr).expect("valid");
        let ok = clamped.contains(&i)
            && next.support_size() == z.support_size() - clamped.len()
            && next.support_size() >= 1;
        t.record(ok, || format!("z={} lr={lr:e}", show(z.values())));
    }
    t
}

fn monte_carlo_agreement(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials.min(100) {
        let base = random_masses(rng, 1, 30, 0.05, 10.0);
        let zeros = rng.random_range(0..base.len());
        let z = with_random_zeros(rng, &base, zeros);
        let m = rng.random_range(1..=50u64);
        let seed = rng.random::<u64>();
        let est = oracles::monte_carlo_expected_cardinality(&z, m, 10_000, seed).expect("valid");
        let closed = masses::expected_cardinality(&z, m).expect("valid");
        let ok = est.covers(closed, 4.0);
        t.record(ok, || {
            format!(
                "z={} m={m} seed={seed} estimate={} se={} closed={closed}",
                show(z.values()),
                est.estimate,
                est.standard_error
            )
        });
    }
    t
}

fn log_ratio_sum_positive(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials * 10 {
        let a = lemma_log_ratio_vector(rng);
        let v = oracles::lemma_log_ratio_sum(&a).expect("valid");
        t.record(v > 0.0, || format!("a={} value={v:e}", show(&a)));

        let same = vec![rng.random_range(0.01..10.0); a.len()];
        let v = oracles::lemma_log_ratio_sum(&same).expect("valid");
        t.record(v == 0.0, || format!("a={} value={v:e}", show(&same)));
    }
    t
}

fn sorted_dot_product_positive(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials * 10 {
        let (w, x) = lemma_dot_pair(rng);
        let ok = matches!(oracles::lemma_dot_product(&w, &x), Ok(v) if v > 0.0);
        t.record(ok, || format!("w={} x={}", show(&w), show(&x)));
    }
    t
}

fn gaussian_monotone(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let k = rng.random_range(1..=8);
        let vars: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..10.0)).collect();
        let d = rng.random_range(0..k);
        let mut smaller = vars.clone();
        smaller[d] *= rng.random_range(0.1..0.999);
        let before = continuous::gaussian_entropy(&DiagonalGaussian::new(vars.clone()).expect("valid"));
        let after = continuous::gaussian_entropy(&DiagonalGaussian::new(smaller).expect("valid"));
        t.record(after < before, || format!("variances={} dim={d}", show(&vars)));
    }
    t
}

fn random_cloud(rng: &mut ChaCha8Rng) -> SampleCloud {
    let n = rng.random_range(1..=30);
    let k = rng.random_range(1..=5);
    SampleCloud::new(
        (0..n)
            .map(|_| (0..k).map(|_| rng.random_range(-10.0..10.0)).collect())
            .collect(),
    )
    .expect("valid cloud")
}

fn contract_identities(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let cloud = random_cloud(rng);
        let n = cloud.len() as f64;
        let lr = rng.random_range(0.01..0.99) * n / 2.0;
        let next = continuous::contract_step(&cloud, lr).expect("lr < n/2");
        let keep = (1.0 - 2.0 * lr / n).powi(2);
        let means_kept = cloud
            .mean()
            .iter()
            .zip(next.mean())
            .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0));
        let recurrence = cloud
            .variance()
            .iter()
            .zip(next.variance())
            .all(|(before, after)| (after - keep * before).abs() <= 1e-12 * before.max(1.0));

        let mut c = next;
        let mut steps = 0;
        while c.variance().iter().any(|&v| v >= 1e-6) && steps < 100_000 {
            c = continuous::contract_step(&c, lr).expect("lr < n/2");
            steps += 1;
        }
        let drained = c.variance().iter().all(|&v| v < 1e-6);
        t.record(means_kept && recurrence && drained, || {
            format!("points={:?} lr={lr}", cloud.points())
        });
    }
    t
}

fn variance_gradient_fd(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let cloud = random_cloud(rng);
        let analytic = continuous::variance_gradient(&cloud);
        let mut worst = 0.0f64;
        for d in 0..cloud.dim() {
            let column: Vec<f64> = cloud.points().iter().map(|p| p[d]).collect();
            let numeric = oracles::central_difference_gradient(wide::variance, &column, oracles::DEFAULT_STEP)
                .expect("valid step");
            for (i, n) in numeric.iter().enumerate() {
                worst = worst.max(oracles::relative_error(analytic[i][d], *n));
            }
        }
        t.record(worst < 1e-8, || format!("points={:?} rel_err={worst:e}", cloud.points()));
    }
    t
}

fn interval_cover(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    const DENOMINATORS: [i64; 7] = [1, 2, 3, 4, 5, 10, 20];
    let mut t = Tally::new("");
    for _ in 0..trials {
        let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
        let a = rng.random_range(-40..=40i64);
        let b = a + rng.random_range(1..=60i64);
        let e = rng.random_range(1..=15i64);
        let u = IntervalUniform::new(a as f64 / d as f64, b as f64 / d as f64).expect("b > a");
        let formula = continuous::interval_covering_number(&u, e as f64 / d as f64).expect("eps > 0");
        let brute = oracles::brute_force_interval_cover(a, b, e).expect("valid");
        t.record(formula == brute, || {
            format!("a={a}/{d} b={b}/{d} eps={e}/{d} formula={formula} brute={brute}")
        });
    }
    t
}

fn range_descent(_: &Harness, rng: &mut ChaCha8Rng, trials: u64) -> Tally {
    let mut t = Tally::new("");
    for _ in 0..trials {
        let a = rng.random_range(-5.0..5.0);
        let width = rng.random_range(0.1..20.0);
        let eps = rng.random_range(0.01..1.0);
        let lr = rng.random_range(0.001..0.5);
        let u = IntervalUniform::new(a, a + width).expect("positive width");
        let steps = continuous::uniform_range_descent(&u, lr, eps, 1_000_000).expect("valid");
        let ok = steps.windows(2).all(|w| {
            w[1].entropy < w[0].entropy && w[1].covering_number <= w[0].covering_number
        }) && steps.last().map(|s| s.covering_number) == Some(1);
        t.record(ok, || format!("a={a} b={} eps={eps} lr={lr}", a + width));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_is_structurally_complete() {
        let reports = verify_corollaries(1, 0).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.check_name.as_str()).collect();
        assert_eq!(names, check_names());
        assert!(reports.iter().all(|r| r.trials >= 1));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(verify_corollaries(0, 0).is_err());
    }

    #[test]
    fn flipped_gradient_is_caught() {
        let reports = verify_corollaries_with(5, 1, Mutation::FlipGradientSign).unwrap();
        let signs = reports
            .iter()
            .find(|r| r.check_name == "masses.extreme_masses_gradient_signs")
            .unwrap();
        assert_eq!(signs.failures, signs.trials);
        assert!(signs.first_counterexample.starts_with("z="));
    }

    #[test]
    fn selection_matches_full_sweep() {
        let full = verify_corollaries(2, 5).unwrap();
        let picked = verify_selected(&["descent.entropy_decreases", "masses.gradient_sum_positive"], 2, 5).unwrap();
        assert_eq!(picked.len(), 2);
        for r in &picked {
            assert!(full.contains(r));
        }
        assert!(verify_selected(&["no.such.check"], 1, 0).is_err());
    }

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(verify_corollaries(3, 9).unwrap(), verify_corollaries(3, 9).unwrap());
    }
}
