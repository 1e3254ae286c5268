//! Unnormalized masses over a finite set of states and the quantities
//! defined on them: entropy, cardinality, expected cardinality, and the
//! analytic gradients of entropy and expected cardinality with respect to
//! the masses.
//!
//! Logarithms are natural throughout, so entropies are in nats. Divide by
//! `ln 2` to get bits; every inequality in this crate is base-invariant.
//!
//! Zero masses follow two conventions:
//!
//! * `0 · ln 0 = 0` inside entropy sums;
//! * the gradient of a zero mass is reported as `0` rather than `+∞`. A zero
//!   mass is clamped at zero by the descent step either way, so the flow is
//!   unchanged and all arithmetic stays finite.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest draw count accepted by the expected-cardinality functions.
pub const MAX_DRAWS: u64 = 1_000_000;

/// Tolerance on the sum of a [`ProbabilityVector`].
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Non-negative, unnormalized mass per state. Always holds at least one
/// state; may be all zero, in which case every query that needs
/// probabilities fails with [`Error::InvalidInput`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MassVector(Vec<f64>);

impl MassVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("mass vector must have at least one state");
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return invalid(format!("mass {i} is {v}; masses must be finite and >= 0"));
        }
        Ok(MassVector(values))
    }

    /// Number of states `s`, including zero-mass states.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Number of states with strictly positive mass.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&v| v > 0.0).count()
    }

    /// `Σ z`, failing when every mass is zero.
    fn positive_total(&self) -> Result<f64> {
        let total = self.total();
        if total > 0.0 {
            Ok(total)
        } else {
            invalid("mass vector is all zero; probabilities are undefined")
        }
    }
}

impl TryFrom<Vec<f64>> for MassVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        MassVector::new(values)
    }
}

impl TryFrom<&[f64]> for MassVector {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        MassVector::new(values.to_vec())
    }
}

impl From<MassVector> for Vec<f64> {
    fn from(z: MassVector) -> Self {
        z.0
    }
}

impl AsRef<[f64]> for MassVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Normalized probabilities, in the same state order as the masses they
/// came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// A probability vector is also a valid mass vector.
    pub fn to_masses(&self) -> MassVector {
        MassVector(self.0.clone())
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `p_i = z_i / Σ_j z_j`.
pub fn normalize(z: &MassVector) -> Result<ProbabilityVector> {
    let total = z.positive_total()?;
    Ok(ProbabilityVector(z.0.iter().map(|&v| v / total).collect()))
}

/// Shannon entropy of the normalized masses, in nats.
pub fn entropy(z: &MassVector) -> Result<f64> {
    let total = z.positive_total()?;
    let h = -z
        .0
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| {
            let p = v / total;
            p * p.ln()
        })
        .sum::<f64>();
    // Rounding can leave a one-hot vector at -0.0 or a few ulps below zero.
    Ok(h.max(0.0))
}

/// Gradient of [`entropy`] with respect to each mass:
///
/// ```text
/// dH/dz_k = (1 / (Σz)²) · Σ_i z_i ln(z_i / z_k)
/// ```
///
/// States with zero mass get `0`.
pub fn entropy_gradient(z: &MassVector) -> Result<Vec<f64>> {
    let total = z.positive_total()?;
    let scale = 1.0 / (total * total);
    Ok(z.0
        .iter()
        .map(|&zk| {
            if zk > 0.0 {
                scale
                    * z.0
                        .iter()
                        .filter(|&&zi| zi > 0.0)
                        .map(|&zi| zi * (zi / zk).ln())
                        .sum::<f64>()
            } else {
                0.0
            }
        })
        .collect())
}

/// The same gradient written through probabilities,
/// `(1/Σz) · Σ_i p_i (ln p_i − ln p_k)`. Used as a second algebraic route
/// to cross-check [`entropy_gradient`].
pub fn entropy_gradient_probability_form(z: &MassVector) -> Result<Vec<f64>> {
    let total = z.positive_total()?;
    let p: Vec<f64> = z.0.iter().map(|&v| v / total).collect();
    Ok(p.iter()
        .map(|&pk| {
            if pk > 0.0 {
                let log_pk = pk.ln();
                p.iter()
                    .filter(|&&pi| pi > 0.0)
                    .map(|&pi| pi * (pi.ln() - log_pk))
                    .sum::<f64>()
                    / total
            } else {
                0.0
            }
        })
        .collect())
}

/// Number of entries strictly greater than `zero_threshold`.
pub fn cardinality(z: &MassVector, zero_threshold: f64) -> usize {
    z.0.iter().filter(|&&v| v > zero_threshold).count()
}

fn check_draws(m: u64) -> Result<()> {
    if m == 0 {
        return invalid("draw count m must be >= 1");
    }
    if m > MAX_DRAWS {
        return invalid(format!("draw count m = {m} exceeds the supported maximum {MAX_DRAWS}"));
    }
    Ok(())
}

/// `(1 − p)^n`, accurate for small `p` and large `n`.
pub(crate) fn miss_probability(p: f64, n: u64) -> f64 {
    if p < 0.5 {
        (n as f64 * (-p).ln_1p()).exp()
    } else {
        (1.0 - p).powf(n as f64)
    }
}

/// `1 − (1 − p)^n`.
pub(crate) fn hit_probability(p: f64, n: u64) -> f64 {
    if p < 0.5 {
        -(n as f64 * (-p).ln_1p()).exp_m1()
    } else {
        1.0 - (1.0 - p).powf(n as f64)
    }
}

/// Expected number of distinct states seen in `m` independent draws,
/// `U(z, m) = Σ_i [1 − (1 − p_i)^m]`.
pub fn expected_cardinality(z: &MassVector, m: u64) -> Result<f64> {
    check_draws(m)?;
    let total = z.positive_total()?;
    Ok(z.0.iter().map(|&v| hit_probability(v / total, m)).sum())
}

/// Expected number of states *not* seen in `m` draws, `Σ_i (1 − p_i)^m`,
/// which is `s − U(z, m)`. Summing the small terms directly keeps their
/// relative precision, so comparisons of `U` between nearby distributions
/// stay resolvable when `U` itself is within an ulp of `s`.
pub fn expected_missed_states(z: &MassVector, m: u64) -> Result<f64> {
    check_draws(m)?;
    let total = z.positive_total()?;
    Ok(z.0.iter().map(|&v| miss_probability(v / total, m)).sum())
}

/// Gradient of [`expected_cardinality`] with respect to each mass:
///
/// ```text
/// dU/dz_k = (m / (Σz)²) · Σ_i z_i [(1 − p_k)^(m−1) − (1 − p_i)^(m−1)]
/// ```
pub fn expected_cardinality_gradient(z: &MassVector, m: u64) -> Result<Vec<f64>> {
    check_draws(m)?;
    let total = z.positive_total()?;
    let miss: Vec<f64> = z
        .0
        .iter()
        .map(|&v| miss_probability(v / total, m - 1))
        .collect();
    let scale = m as f64 / (total * total);
    Ok(miss
        .iter()
        .map(|&miss_k| {
            scale
                * z.0
                    .iter()
                    .zip(&miss)
                    .map(|(&zi, &miss_i)| zi * (miss_k - miss_i))
                    .sum::<f64>()
        })
        .collect())
}

/// Whether descending entropy shrinks the mass of state `k`: true iff
/// `ln z_k` is below the mass-weighted mean of the log masses.
pub fn mass_decrease_condition(z: &MassVector, k: usize) -> Result<bool> {
    if k >= z.len() {
        return invalid(format!("state index {k} out of range for {} states", z.len()));
    }
    let total = z.positive_total()?;
    if z.0[k] <= 0.0 {
        return invalid(format!("state {k} has zero mass"));
    }
    let weighted_log_mean: f64 = z
        .0
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| (v / total) * v.ln())
        .sum();
    Ok(z.0[k].ln() < weighted_log_mean)
}

/// Change in each state's probability after one entropy-descent step at
/// learning rate `lr`, from the closed form
///
/// ```text
/// Δp_i = (lr / c) · [z_i Σ_j g_j − (Σ_j z_j) g_i],   c = (Σz)(Σz̃)
/// ```
///
/// where `g` is the entropy gradient and `z̃ = z − lr·g`. The step must not
/// clamp any positive mass; the first index that would reach zero is
/// reported through [`Error::WouldClamp`].
pub fn probability_change(z: &MassVector, lr: f64) -> Result<Vec<f64>> {
    if !(lr > 0.0 && lr.is_finite()) {
        return invalid(format!("learning rate must be positive and finite, got {lr}"));
    }
    let total = z.positive_total()?;
    let grad = entropy_gradient(z)?;
    if let Some(index) = z
        .0
        .iter()
        .zip(&grad)
        .position(|(&zk, &gk)| zk > 0.0 && zk - lr * gk <= 0.0)
    {
        return Err(Error::WouldClamp { index });
    }
    let grad_sum: f64 = grad.iter().sum();
    let new_total: f64 = z.0.iter().zip(&grad).map(|(&zk, &gk)| zk - lr * gk).sum();
    let c = total * new_total;
    Ok(z.0
        .iter()
        .zip(&grad)
        .map(|(&zi, &gi)| (lr / c) * (zi * grad_sum - total * gi))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(v: &[f64]) -> MassVector {
        MassVector::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn construction_rejects_bad_masses() {
        assert!(MassVector::new(vec![]).is_err());
        assert!(MassVector::new(vec![1.0, -0.5]).is_err());
        assert!(MassVector::new(vec![f64::NAN]).is_err());
        assert!(MassVector::new(vec![f64::INFINITY, 1.0]).is_err());
        // all-zero is a valid vector, just not normalizable
        assert!(MassVector::new(vec![0.0, 0.0]).is_ok());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&mv(&[1.0, 1.0])).unwrap().values(), &[0.5, 0.5]);
        assert_eq!(normalize(&mv(&[0.0, 2.0])).unwrap().values(), &[0.0, 1.0]);
        assert_eq!(normalize(&mv(&[1.0, 3.0])).unwrap().values(), &[0.25, 0.75]);
        assert!(matches!(normalize(&mv(&[0.0, 0.0])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&mv(&[0.0, 5.0, 0.0])).unwrap(), 0.0);
        assert!(close(entropy(&mv(&[1.0, 1.0, 1.0])).unwrap(), 3f64.ln(), 1e-15));
        // 40-digit reference: 0.63651416829481281845...
        assert!(close(entropy(&mv(&[1.0, 2.0])).unwrap(), 0.636_514_168_294_812_8, 1e-15));
        assert!(entropy(&mv(&[0.0])).is_err());
        assert_eq!(entropy(&mv(&[3.0])).unwrap(), 0.0);
    }

    #[test]
    fn entropy_gradient_examples() {
        assert_eq!(entropy_gradient(&mv(&[1.0, 1.0, 1.0])).unwrap(), vec![0.0; 3]);

        let g = entropy_gradient(&mv(&[1.0, 2.0])).unwrap();
        assert!(close(g[0], 0.154_032_706_791_098_96, 1e-15));
        assert!(close(g[1], -0.077_016_353_395_549_48, 1e-15));

        let g = entropy_gradient(&mv(&[0.0, 1.0, 2.0])).unwrap();
        assert_eq!(g[0], 0.0);
        assert!(close(g[1], 0.154_032_706_791_098_96, 1e-15));
        assert!(close(g[2], -0.077_016_353_395_549_48, 1e-15));

        assert_eq!(entropy_gradient(&mv(&[4.0])).unwrap(), vec![0.0]);
        assert!(entropy_gradient(&mv(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn gradient_forms_agree_on_fixed_vectors() {
        for z in [vec![1.0, 2.0], vec![0.0, 1.0, 2.0], vec![0.3, 7.0, 2.5, 2.5, 0.01]] {
            let z = mv(&z);
            let a = entropy_gradient(&z).unwrap();
            let b = entropy_gradient_probability_form(&z).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() <= 1e-10 * x.abs().max(y.abs()).max(1e-12));
            }
        }
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(cardinality(&mv(&[0.0, 3.0, 0.0, 2.0]), 0.0), 2);
        assert_eq!(cardinality(&mv(&[1.0, 1.0, 1.0]), 0.0), 3);
        assert_eq!(cardinality(&mv(&[1e-15, 1.0]), 1e-12), 1);
        assert_eq!(cardinality(&mv(&[0.0, 0.0]), 0.0), 0);
    }

    #[test]
    fn expected_cardinality_examples() {
        for z in [vec![1.0, 2.0], vec![0.1, 0.0, 5.0, 3.0]] {
            assert!(close(expected_cardinality(&mv(&z), 1).unwrap(), 1.0, 1e-15));
        }
        assert!(close(expected_cardinality(&mv(&[1.0, 1.0]), 2).unwrap(), 1.5, 1e-15));
        assert_eq!(expected_cardinality(&mv(&[0.0, 7.0]), 100).unwrap(), 1.0);
        assert!(matches!(
            expected_cardinality(&mv(&[1.0]), 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(expected_cardinality(&mv(&[1.0]), MAX_DRAWS + 1).is_err());
        assert_eq!(expected_cardinality(&mv(&[5.0]), 17).unwrap(), 1.0);
    }

    #[test]
    fn expected_cardinality_large_m_stays_below_cardinality() {
        let z = mv(&[1.0, 1e-9, 3.0]);
        let u = expected_cardinality(&z, MAX_DRAWS).unwrap();
        assert!(u < 3.0);
        assert!(u > 2.0);
    }

    #[test]
    fn missed_states_complement() {
        let z = mv(&[0.5, 0.0, 2.0, 1.25]);
        for m in [1, 2, 7, 40] {
            let u = expected_cardinality(&z, m).unwrap();
            let missed = expected_missed_states(&z, m).unwrap();
            assert!((u + missed - 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn expected_cardinality_gradient_examples() {
        let g = expected_cardinality_gradient(&mv(&[2.0, 2.0, 2.0]), 7).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
        let g = expected_cardinality_gradient(&mv(&[1.0, 4.0, 0.5]), 1).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
        let g = expected_cardinality_gradient(&mv(&[1.0, 2.0]), 2).unwrap();
        assert!(close(g[0], 4.0 / 27.0, 1e-15));
        assert!(close(g[1], -2.0 / 27.0, 1e-15));
        assert!(expected_cardinality_gradient(&mv(&[1.0]), 0).is_err());
    }

    #[test]
    fn mass_decrease_condition_examples() {
        assert!(mass_decrease_condition(&mv(&[1.0, 2.0]), 0).unwrap());
        assert!(!mass_decrease_condition(&mv(&[1.0, 2.0]), 1).unwrap());
        assert!(!mass_decrease_condition(&mv(&[1.0, 1.0]), 0).unwrap());
        assert!(matches!(
            mass_decrease_condition(&mv(&[1.0, 2.0]), 2),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn probability_change_examples() {
        assert_eq!(probability_change(&mv(&[2.0, 2.0, 2.0]), 0.3).unwrap(), vec![0.0; 3]);

        // Oracle: recompute the step directly and renormalize.
        let z = mv(&[1.0, 2.0]);
        let lr = 0.01;
        let g = entropy_gradient(&z).unwrap();
        let stepped = mv(&[1.0 - lr * g[0], 2.0 - lr * g[1]]);
        let direct: Vec<f64> = normalize(&stepped)
            .unwrap()
            .values()
            .iter()
            .zip(normalize(&z).unwrap().values())
            .map(|(a, b)| a - b)
            .collect();
        let closed = probability_change(&z, lr).unwrap();
        for (a, b) in closed.iter().zip(&direct) {
            assert!(close(*a, *b, 1e-12));
        }
        assert!(closed.iter().sum::<f64>().abs() < 1e-12);

        let dp = probability_change(&mv(&[1.0, 2.0, 4.0]), 0.01).unwrap();
        assert!(dp[0] < 0.0);
        assert!(dp[2] > 0.0);
    }

    #[test]
    fn probability_change_reports_clamp() {
        // gradient of state 0 is 2 ln2 / 9 ≈ 0.154; lr = 10 pushes it below 0
        assert_eq!(
            probability_change(&mv(&[1.0, 2.0]), 10.0),
            Err(Error::WouldClamp { index: 0 })
        );
        assert!(probability_change(&mv(&[1.0, 2.0]), 0.0).is_err());
    }

    #[test]
    fn small_probability_powers_are_accurate() {
        let p = 1e-12;
        let hit = hit_probability(p, 1000);
        // 1 - (1 - 1e-12)^1000 = 9.999999995005000001662e-10
        assert!((hit - 9.999_999_995_005e-10).abs() < 1e-23);
        assert_eq!(miss_probability(1.0, 3), 0.0);
        assert_eq!(miss_probability(0.3, 0), 1.0);
    }
}
