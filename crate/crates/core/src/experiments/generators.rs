//! Random inputs for the property sweeps.

use rand::Rng;

use crate::masses::{self, MassVector};

/// `s ∈ [s_min, s_max]` masses, each uniform in `[lo, hi)`.
pub fn random_masses<R: Rng + ?Sized>(rng: &mut R, s_min: usize, s_max: usize, lo: f64, hi: f64) -> MassVector {
    let s = rng.random_range(s_min..=s_max);
    MassVector::new((0..s).map(|_| rng.random_range(lo..hi)).collect())
        .expect("uniform draws from a positive range are valid masses")
}

/// Like [`random_masses`] but redrawn until at least two entries differ.
pub fn random_non_uniform_masses<R: Rng + ?Sized>(
    rng: &mut R,
    s_min: usize,
    s_max: usize,
    lo: f64,
    hi: f64,
) -> MassVector {
    assert!(s_min >= 2, "a non-uniform vector needs two states");
    loop {
        let z = random_masses(rng, s_min, s_max, lo, hi);
        let v = z.values();
        if v.iter().any(|&x| x != v[0]) {
            return z;
        }
    }
}

/// Copies `z` and sets `zeros` randomly chosen entries to zero, keeping at
/// least two positive entries.
pub fn with_random_zeros<R: Rng + ?Sized>(rng: &mut R, z: &MassVector, zeros: usize) -> MassVector {
    let mut v = z.values().to_vec();
    let zeros = zeros.min(v.len().saturating_sub(2));
    let mut placed = 0;
    while placed < zeros {
        let k = rng.random_range(0..v.len());
        if v[k] > 0.0 {
            v[k] = 0.0;
            placed += 1;
        }
    }
    MassVector::new(v).expect("zeroing entries keeps masses valid")
}

/// `0.1 · (smallest positive mass) / (largest |gradient| + 1e-12)`: small
/// enough that no positive mass moves by more than a tenth of the smallest
/// one, so no clamp fires.
pub fn no_clamp_learning_rate(z: &MassVector) -> f64 {
    let smallest = z
        .values()
        .iter()
        .copied()
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let largest_gradient = masses::entropy_gradient(z)
        .map(|g| g.iter().fold(0.0f64, |a, b| a.max(b.abs())))
        .unwrap_or(0.0);
    0.1 * smallest / (largest_gradient + 1e-12)
}

/// Positive vector of length 2..=12 with at least two distinct entries.
pub fn lemma_log_ratio_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec<f64> {
    random_non_uniform_masses(rng, 2, 12, 0.01, 10.0).into_inner()
}

/// A pair `(w, x)` meeting the sorted-dot-product preconditions. `x` is a
/// raw sample with its mean subtracted, sorted descending so its
/// non-negative entries come first; `w` is non-negative, sorted descending
/// and non-constant.
pub fn lemma_dot_pair<R: Rng + ?Sized>(rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let len = rng.random_range(2..=12);
    loop {
        let mut w: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..10.0)).collect();
        w.sort_by(|a, b| b.total_cmp(a));
        let raw: Vec<f64> = (0..len).map(|_| rng.random_range(-5.0..5.0)).collect();
        let mean = raw.iter().sum::<f64>() / len as f64;
        let mut x: Vec<f64> = raw.iter().map(|v| v - mean).collect();
        x.sort_by(|a, b| b.total_cmp(a));
        let sum: f64 = x.iter().sum();
        // push any rounding residue into the largest entry
        x[0] -= sum;
        let ok = w.iter().any(|&v| v != w[0])
            && x.iter().any(|&v| v != x[0])
            && x[0] >= 0.0
            && x[len - 1] < 0.0
            && x.iter().sum::<f64>().abs() <= crate::oracles::ZERO_SUM_TOLERANCE;
        if ok {
            return (w, x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::rng_from_seed;
    use crate::oracles;

    #[test]
    fn no_clamp_rate_prevents_clamping() {
        let mut rng = rng_from_seed(3);
        for _ in 0..200 {
            let z = random_non_uniform_masses(&mut rng, 2, 12, 0.05, 10.0);
            let lr = no_clamp_learning_rate(&z);
            assert!(masses::probability_change(&z, lr).is_ok());
        }
    }

    #[test]
    fn dot_pairs_meet_preconditions() {
        let mut rng = rng_from_seed(4);
        for _ in 0..500 {
            let (w, x) = lemma_dot_pair(&mut rng);
            oracles::lemma_dot_product(&w, &x).unwrap();
        }
    }

    #[test]
    fn zeros_keep_two_positive() {
        let mut rng = rng_from_seed(8);
        let z = random_masses(&mut rng, 3, 3, 1.0, 2.0);
        let zz = with_random_zeros(&mut rng, &z, 10);
        assert_eq!(zz.support_size(), 2);
    }
}
