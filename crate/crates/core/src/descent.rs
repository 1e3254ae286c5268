//! Clamped gradient descent on entropy over unnormalized masses.
//!
//! One step is `z̃_k = max(z_k − lr · dH/dz_k, 0)`. Zero masses have zero
//! gradient and never move. Exact zero cannot be reached from above in
//! finitely many floating-point steps of this flow, so [`run`] snaps masses
//! below [`DescentConfig::zero_snap_tolerance`] to exactly zero; this is what
//! makes finite-time loss of support observable.
//!
//! The diagnostics at the bottom of the module expose the quantities used
//! to bound how fast the smallest state's probability falls.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, precondition, Error, Result};
use crate::masses::{self, MassVector};

pub const DEFAULT_ZERO_SNAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopMode {
    /// Stop as soon as at most one state has mass above the snap tolerance.
    CardinalityOne,
    /// Run until `max_steps` or a fixed point.
    MaxStepsOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentConfig {
    pub learning_rate: f64,
    pub max_steps: u64,
    pub zero_snap_tolerance: f64,
    /// Draw counts `m` for which `U(z, m)` is logged at every recorded step.
    pub tracked_draw_counts: Vec<u64>,
    pub stop_mode: StopMode,
    /// Record every `record_stride`-th step. The initial and final states
    /// are always recorded.
    pub record_stride: u64,
}

impl DescentConfig {
    pub fn new(learning_rate: f64) -> Self {
        DescentConfig {
            learning_rate,
            max_steps: 1_000_000,
            zero_snap_tolerance: DEFAULT_ZERO_SNAP_TOLERANCE,
            tracked_draw_counts: Vec::new(),
            stop_mode: StopMode::CardinalityOne,
            record_stride: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return invalid(format!(
                "learning rate must be positive and finite, got {}",
                self.learning_rate
            ));
        }
        if self.max_steps == 0 {
            return invalid("max_steps must be >= 1");
        }
        if !(self.zero_snap_tolerance >= 0.0 && self.zero_snap_tolerance.is_finite()) {
            return invalid(format!(
                "zero snap tolerance must be finite and >= 0, got {}",
                self.zero_snap_tolerance
            ));
        }
        if self.record_stride == 0 {
            return invalid("record stride must be >= 1");
        }
        if let Some(&m) = self
            .tracked_draw_counts
            .iter()
            .find(|&&m| m == 0 || m > masses::MAX_DRAWS)
        {
            return invalid(format!("tracked draw count {m} is out of range"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub masses: MassVector,
    pub entropy: f64,
    pub total_mass: f64,
    pub cardinality: usize,
    pub expected_cardinalities: BTreeMap<u64, f64>,
    /// Entropy gradient at `masses`. Not part of the serialized record.
    #[serde(skip)]
    pub gradient: Vec<f64>,
    /// States that hit zero on the step that produced this record, either
    /// through the clamp or the zero snap.
    pub clamped_indices: Vec<usize>,
}

impl StepRecord {
    fn capture(
        t: u64,
        z: &MassVector,
        gradient: Vec<f64>,
        clamped_indices: Vec<usize>,
        config: &DescentConfig,
    ) -> Result<Self> {
        let expected_cardinalities = config
            .tracked_draw_counts
            .iter()
            .map(|&m| Ok((m, masses::expected_cardinality(z, m)?)))
            .collect::<Result<_>>()?;
        Ok(StepRecord {
            t,
            masses: z.clone(),
            entropy: masses::entropy(z)?,
            total_mass: z.total(),
            cardinality: masses::cardinality(z, config.zero_snap_tolerance),
            expected_cardinalities,
            gradient,
            clamped_indices,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    CardinalityOne,
    /// The gradient vanished: the masses are uniform on their support.
    FixedPoint,
    MaxSteps,
}

impl TerminationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminationReason::CardinalityOne => "cardinality_one",
            TerminationReason::FixedPoint => "fixed_point",
            TerminationReason::MaxSteps => "max_steps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub config: DescentConfig,
    pub initial: MassVector,
    pub steps: Vec<StepRecord>,
    pub termination_reason: TerminationReason,
    /// Number of descent steps taken, whether or not each was recorded.
    pub steps_taken: u64,
}

impl Trajectory {
    pub fn last(&self) -> &StepRecord {
        self.steps.last().expect("trajectory always records the initial state")
    }
}

fn step_with_gradient(z: &MassVector, gradient: &[f64], lr: f64) -> (MassVector, Vec<usize>) {
    let mut clamped = Vec::new();
    let next = z
        .values()
        .iter()
        .zip(gradient)
        .enumerate()
        .map(|(k, (&zk, &gk))| {
            let moved = zk - lr * gk;
            if moved > 0.0 {
                moved
            } else {
                if zk > 0.0 {
                    clamped.push(k);
                }
                0.0
            }
        })
        .collect();
    (MassVector::new(next).expect("clamped step keeps masses finite and non-negative"), clamped)
}

/// One clamped descent step. Returns the new masses and the indices of
/// positive masses that the clamp sent to zero.
pub fn step(z: &MassVector, lr: f64) -> Result<(MassVector, Vec<usize>)> {
    if !(lr > 0.0 && lr.is_finite()) {
        return invalid(format!("learning rate must be positive and finite, got {lr}"));
    }
    let gradient = masses::entropy_gradient(z)?;
    Ok(step_with_gradient(z, &gradient, lr))
}

/// Runs the descent from `z0` until the stop rule fires.
pub fn run(z0: &MassVector, config: &DescentConfig) -> Result<Trajectory> {
    run_with_observer(z0, config, |_, _, _| {})
}

/// Like [`run`], but calls `observer(before, after, clamped)` for every step
/// taken, including steps the stride leaves unrecorded.
pub fn run_with_observer<F>(z0: &MassVector, config: &DescentConfig, mut observer: F) -> Result<Trajectory>
where
    F: FnMut(&MassVector, &MassVector, &[usize]),
{
    config.validate()?;
    let largest = z0.values().iter().copied().fold(0.0, f64::max);
    if largest <= 0.0 {
        return invalid("initial mass vector is all zero");
    }
    if config.stop_mode == StopMode::MaxStepsOnly && largest <= config.zero_snap_tolerance {
        return invalid("every initial mass is below the zero snap tolerance");
    }

    let lr = config.learning_rate;
    let tol = config.zero_snap_tolerance;
    let mut z = z0.clone();
    let mut gradient = masses::entropy_gradient(&z)?;
    let mut steps = vec![StepRecord::capture(0, &z, gradient.clone(), Vec::new(), config)?];
    let mut t = 0u64;
    let mut last_clamped = Vec::new();

    let reason = loop {
        if config.stop_mode == StopMode::CardinalityOne && masses::cardinality(&z, tol) <= 1 {
            break TerminationReason::CardinalityOne;
        }
        if gradient.iter().all(|&g| g == 0.0) {
            break TerminationReason::FixedPoint;
        }
        if t == config.max_steps {
            break TerminationReason::MaxSteps;
        }

        let (stepped, mut clamped) = step_with_gradient(&z, &gradient, lr);
        let mut snapped = stepped.into_inner();
        for (k, v) in snapped.iter_mut().enumerate() {
            if *v > 0.0 && *v < tol {
                *v = 0.0;
                clamped.push(k);
            }
        }
        clamped.sort_unstable();
        let next = MassVector::new(snapped)?;
        observer(&z, &next, &clamped);

        z = next;
        t += 1;
        gradient = masses::entropy_gradient(&z)?;
        if t.is_multiple_of(config.record_stride) {
            steps.push(StepRecord::capture(t, &z, gradient.clone(), clamped, config)?);
        } else {
            last_clamped = clamped;
        }
    };

    if steps.last().map(|r| r.t) != Some(t) {
        steps.push(StepRecord::capture(t, &z, gradient, last_clamped, config)?);
    }

    Ok(Trajectory {
        config: config.clone(),
        initial: z0.clone(),
        steps,
        termination_reason: reason,
        steps_taken: t,
    })
}

/// Indices of positive masses sorted by ascending mass (stable on ties).
fn ascending_support(z: &MassVector) -> Vec<usize> {
    let values = z.values();
    let mut idx: Vec<usize> = (0..values.len()).filter(|&k| values[k] > 0.0).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    idx
}

/// Ratio of the second-smallest to the smallest positive mass. Ties give 1.
pub fn ratio_diagnostic(z: &MassVector) -> Result<f64> {
    let order = ascending_support(z);
    if order.len() < 2 {
        return invalid("ratio needs at least two positive masses");
    }
    let v = z.values();
    Ok(v[order[1]] / v[order[0]])
}

/// The four positive factors whose product lower-bounds the one-step fall
/// in probability of the smallest positive state `i`:
///
/// ```text
/// (lr / c) · (1 − s·p_i) · (1 − p_i) · ln(z_m / z_i)
/// ```
///
/// with `c = (Σz)(Σz̃)`, `s` the number of positive states, and `z_m` the
/// second-smallest positive mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecreaseBoundFactors {
    /// Index of the smallest positive mass (first one on ties).
    pub smallest_index: usize,
    /// `c = (Σz)(Σz̃)`.
    pub c: f64,
    pub lr_over_c: f64,
    /// `p_i`, the smallest positive probability.
    pub smallest_probability: f64,
    pub one_minus_s_p: f64,
    pub one_minus_p: f64,
    /// `z_m / z_i`.
    pub ratio: f64,
    pub log_ratio: f64,
}

impl DecreaseBoundFactors {
    pub fn value(&self) -> f64 {
        self.lr_over_c * self.one_minus_s_p * self.one_minus_p * self.log_ratio
    }
}

pub fn decrease_bound_factors(z: &MassVector, lr: f64) -> Result<DecreaseBoundFactors> {
    let order = ascending_support(z);
    if order.len() < 2 {
        return invalid("the decrease bound needs at least two positive masses");
    }
    let gradient = masses::entropy_gradient(z)?;
    if gradient.iter().all(|&g| g == 0.0) {
        return precondition("masses are uniform on their support; nothing decreases");
    }
    if !(lr > 0.0 && lr.is_finite()) {
        return invalid(format!("learning rate must be positive and finite, got {lr}"));
    }
    let v = z.values();
    if let Some(index) = v
        .iter()
        .zip(&gradient)
        .position(|(&zk, &gk)| zk > 0.0 && zk - lr * gk <= 0.0)
    {
        return Err(Error::WouldClamp { index });
    }
    let total = z.total();
    let new_total: f64 = v.iter().zip(&gradient).map(|(&zk, &gk)| zk - lr * gk).sum();
    let c = total * new_total;
    let i = order[0];
    let p = v[i] / total;
    let ratio = v[order[1]] / v[i];
    Ok(DecreaseBoundFactors {
        smallest_index: i,
        c,
        lr_over_c: lr / c,
        smallest_probability: p,
        one_minus_s_p: 1.0 - order.len() as f64 * p,
        one_minus_p: 1.0 - p,
        ratio,
        log_ratio: ratio.ln(),
    })
}

/// Lower bound on `p_i − p̃_i` for the smallest positive state after one
/// un-clamped step. Zero when the smallest mass is tied.
pub fn smallest_probability_decrease_bound(z: &MassVector, lr: f64) -> Result<f64> {
    decrease_bound_factors(z, lr).map(|f| f.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradientSumDiagnostics {
    /// `Σ_k dH/dz_k`.
    pub sum: f64,
    /// `sum / s`.
    pub mean_gradient: f64,
    /// `Σ_k z_k / s`.
    pub mean_mass: f64,
}

pub fn gradient_sum_diagnostics(z: &MassVector) -> Result<GradientSumDiagnostics> {
    let gradient = masses::entropy_gradient(z)?;
    let s = z.len() as f64;
    let sum: f64 = gradient.iter().sum();
    Ok(GradientSumDiagnostics {
        sum,
        mean_gradient: sum / s,
        mean_mass: z.total() / s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(v: &[f64]) -> MassVector {
        MassVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn step_fixed_points() {
        let (next, clamped) = step(&mv(&[1.0, 1.0, 1.0]), 0.7).unwrap();
        assert_eq!(next.values(), &[1.0, 1.0, 1.0]);
        assert!(clamped.is_empty());

        let (next, clamped) = step(&mv(&[0.0, 4.0]), 3.0).unwrap();
        assert_eq!(next.values(), &[0.0, 4.0]);
        assert!(clamped.is_empty());
    }

    #[test]
    fn step_two_states() {
        let (next, clamped) = step(&mv(&[1.0, 2.0]), 0.09).unwrap();
        assert!((next.values()[0] - 0.986_137_056_388_801_1).abs() < 1e-15);
        assert!((next.values()[1] - 2.006_931_471_805_599_5).abs() < 1e-15);
        assert!(clamped.is_empty());
    }

    #[test]
    fn step_reports_clamp() {
        let (next, clamped) = step(&mv(&[1.0, 2.0]), 10.0).unwrap();
        assert_eq!(next.values()[0], 0.0);
        assert_eq!(clamped, vec![0]);
        assert!(step(&mv(&[1.0, 2.0]), -1.0).is_err());
    }

    #[test]
    fn run_one_hot_and_uniform() {
        let cfg = DescentConfig::new(0.1);
        let traj = run(&mv(&[0.0, 3.0, 0.0]), &cfg).unwrap();
        assert_eq!(traj.steps.len(), 1);
        assert_eq!(traj.termination_reason, TerminationReason::CardinalityOne);

        let traj = run(&mv(&[2.0, 2.0]), &cfg).unwrap();
        assert_eq!(traj.steps.len(), 1);
        assert_eq!(traj.termination_reason, TerminationReason::FixedPoint);
        assert_eq!(traj.last().masses.values(), &[2.0, 2.0]);
    }

    #[test]
    fn run_reaches_cardinality_one() {
        let cfg = DescentConfig::new(0.05);
        let traj = run(&mv(&[1.0, 2.0, 4.0]), &cfg).unwrap();
        assert_eq!(traj.termination_reason, TerminationReason::CardinalityOne);
        assert_eq!(traj.last().cardinality, 1);
        assert!(traj.steps_taken < cfg.max_steps);
        for (i, rec) in traj.steps.iter().enumerate() {
            assert_eq!(rec.t, i as u64);
        }
    }

    #[test]
    fn run_max_steps_and_stride() {
        let mut cfg = DescentConfig::new(0.05);
        cfg.max_steps = 10;
        cfg.record_stride = 4;
        cfg.tracked_draw_counts = vec![2, 5];
        let traj = run(&mv(&[1.0, 2.0, 4.0]), &cfg).unwrap();
        assert_eq!(traj.termination_reason, TerminationReason::MaxSteps);
        let ts: Vec<u64> = traj.steps.iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0, 4, 8, 10]);
        assert_eq!(traj.steps[1].expected_cardinalities.len(), 2);
    }

    #[test]
    fn run_rejects_bad_input() {
        assert!(run(&mv(&[0.0, 0.0]), &DescentConfig::new(0.1)).is_err());
        assert!(run(&mv(&[1.0, 2.0]), &DescentConfig::new(0.0)).is_err());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_diagnostic(&mv(&[1.0, 2.0, 4.0])).unwrap(), 2.0);
        assert_eq!(ratio_diagnostic(&mv(&[3.0, 3.0, 5.0])).unwrap(), 1.0);
        assert_eq!(ratio_diagnostic(&mv(&[0.0, 4.0, 1.0])).unwrap(), 4.0);
        assert!(ratio_diagnostic(&mv(&[0.0, 4.0])).is_err());

        let z = mv(&[1.0, 2.0]);
        let (next, _) = step(&z, 0.01).unwrap();
        assert!(ratio_diagnostic(&next).unwrap() > ratio_diagnostic(&z).unwrap());
    }

    #[test]
    fn bound_below_actual_decrease() {
        for z in [vec![1.0, 2.0], vec![1.0, 2.0, 4.0]] {
            let z = mv(&z);
            let bound = smallest_probability_decrease_bound(&z, 0.01).unwrap();
            let actual = -masses::probability_change(&z, 0.01).unwrap()[0];
            assert!(bound > 0.0);
            assert!(bound < actual, "bound {bound} actual {actual}");
        }
    }

    #[test]
    fn bound_near_uniform_is_tiny() {
        let bound = smallest_probability_decrease_bound(&mv(&[1.0, 1.0 + 1e-9]), 0.01).unwrap();
        assert!((0.0..1e-10).contains(&bound));
    }

    #[test]
    fn bound_preconditions() {
        assert!(matches!(
            smallest_probability_decrease_bound(&mv(&[1.0, 1.0]), 0.01),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            smallest_probability_decrease_bound(&mv(&[1.0, 2.0]), 10.0),
            Err(Error::WouldClamp { index: 0 })
        ));
        assert!(smallest_probability_decrease_bound(&mv(&[0.0, 2.0]), 0.1).is_err());
        // tied minimum: ln(z_m / z_i) = 0
        assert_eq!(smallest_probability_decrease_bound(&mv(&[1.0, 1.0, 3.0]), 0.01).unwrap(), 0.0);
    }

    #[test]
    fn gradient_sum_examples() {
        assert_eq!(gradient_sum_diagnostics(&mv(&[2.0, 2.0])).unwrap().sum, 0.0);
        let d = gradient_sum_diagnostics(&mv(&[1.0, 2.0])).unwrap();
        assert!((d.sum - 2f64.ln() / 9.0).abs() < 1e-15);
        assert!((d.mean_gradient - d.sum / 2.0).abs() < 1e-18);
        assert_eq!(d.mean_mass, 1.5);
    }
}
