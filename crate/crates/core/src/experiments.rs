//! Seeded random distributions and the record sets behind the three
//! entropy-vs-cardinality scatter figures.
//!
//! Every record gets its own generator, seeded with
//! `seed ^ splitmix64(index)`, so any single record can be regenerated
//! without the others and parallel generation yields the same bytes as a
//! serial run. The generator is ChaCha8.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::masses::{self, MassVector, ProbabilityVector};

pub mod generators;
pub mod verify;

pub use verify::{verify_corollaries, verify_corollaries_with, verify_selected, InvariantReport, Mutation};

/// Seed used by the CLI and the documented reference runs.
pub const DEFAULT_SEED: u64 = 42;

/// Mass-vector lengths shown in the per-`s` breakdown figure.
pub const FIGURE3_STATE_COUNTS: [usize; 6] = [2, 5, 10, 25, 50, 100];

/// Rows in the reference run of the 3-state entropy scatter.
pub const FIGURE1_ROWS: usize = 50_000;
/// Rows in the reference run of the entropy vs expected-cardinality scatter.
pub const FIGURE2_ROWS: usize = 10_000;
/// Records drawn before the per-`s` filter of the breakdown figure; about
/// 6% survive the filter, roughly 1000 per length.
pub const FIGURE3_POOL: usize = 100_000;

/// SplitMix64 finalizer. Used to spread record indices over the seed space.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn record_seed(seed: u64, index: u64) -> u64 {
    seed ^ splitmix64(index)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from the `(s−1)`-simplex: `s` unit-exponential draws
/// divided by their sum (a flat Dirichlet).
pub fn sample_simplex_with<R: Rng + ?Sized>(rng: &mut R, s: usize) -> Result<ProbabilityVector> {
    if s < 2 {
        return invalid(format!("simplex sampling needs s >= 2, got {s}"));
    }
    let draws: Vec<f64> = (0..s).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    masses::normalize(&MassVector::new(draws)?)
}

pub fn sample_simplex(s: usize, seed: u64) -> Result<ProbabilityVector> {
    sample_simplex_with(&mut rng_from_seed(seed), s)
}

/// One sampled distribution and its compactness measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub s: usize,
    /// Draw count; 0 when the record has no expected cardinality.
    pub m: u64,
    pub probabilities: ProbabilityVector,
    pub entropy: f64,
    pub expected_cardinality: Option<f64>,
    pub nonzero_count: usize,
    pub seed: u64,
}

impl ExperimentRecord {
    fn from_probabilities(p: ProbabilityVector, m: u64, seed: u64) -> Result<Self> {
        let z = p.to_masses();
        Ok(ExperimentRecord {
            s: p.len(),
            m,
            entropy: masses::entropy(&z)?,
            expected_cardinality: if m > 0 {
                Some(masses::expected_cardinality(&z, m)?)
            } else {
                None
            },
            nonzero_count: masses::cardinality(&z, 0.0),
            probabilities: p,
            seed,
        })
    }
}

fn generate<F>(n: usize, seed: u64, make: F) -> Result<Vec<ExperimentRecord>>
where
    F: Fn(u64) -> Result<ExperimentRecord> + Sync,
{
    (0..n as u64)
        .into_par_iter()
        .map(|i| make(record_seed(seed, i)))
        .collect()
}

/// `n` uniformly sampled 3-state distributions with their entropies.
pub fn figure1_data(n: usize, seed: u64) -> Result<Vec<ExperimentRecord>> {
    if n == 0 {
        return invalid("n must be >= 1");
    }
    generate(n, seed, |rs| {
        let p = sample_simplex(3, rs)?;
        ExperimentRecord::from_probabilities(p, 0, rs)
    })
}

/// Integer ranges for the random length `s` and draw count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Figure2Ranges {
    pub s_min: usize,
    pub s_max: usize,
    pub m_min: u64,
    pub m_max: u64,
}

impl Default for Figure2Ranges {
    fn default() -> Self {
        Figure2Ranges {
            s_min: 2,
            s_max: 100,
            m_min: 2,
            m_max: 100,
        }
    }
}

impl Figure2Ranges {
    pub fn validate(&self) -> Result<()> {
        if !(2 <= self.s_min && self.s_min <= self.s_max) {
            return invalid(format!("need 2 <= s_min <= s_max, got [{}, {}]", self.s_min, self.s_max));
        }
        if !(2 <= self.m_min && self.m_min <= self.m_max && self.m_max <= masses::MAX_DRAWS) {
            return invalid(format!("need 2 <= m_min <= m_max, got [{}, {}]", self.m_min, self.m_max));
        }
        Ok(())
    }
}

/// `n` distributions with `s` and `m` drawn independently and uniformly from
/// their ranges, each with entropy and `U(p, m)`.
pub fn figure2_data(n: usize, ranges: Figure2Ranges, seed: u64) -> Result<Vec<ExperimentRecord>> {
    if n == 0 {
        return invalid("n must be >= 1");
    }
    ranges.validate()?;
    generate(n, seed, |rs| {
        let mut rng = rng_from_seed(rs);
        let s = rng.random_range(ranges.s_min..=ranges.s_max);
        let m = rng.random_range(ranges.m_min..=ranges.m_max);
        let p = sample_simplex_with(&mut rng, s)?;
        ExperimentRecord::from_probabilities(p, m, rs)
    })
}

/// The default-range figure-2 records from a pool of `n`, keeping only the
/// lengths in [`FIGURE3_STATE_COUNTS`].
pub fn figure3_data(n: usize, seed: u64) -> Result<Vec<ExperimentRecord>> {
    Ok(figure2_data(n, Figure2Ranges::default(), seed)?
        .into_iter()
        .filter(|r| FIGURE3_STATE_COUNTS.contains(&r.s))
        .collect())
}

/// Mean expected cardinality of each entropy quantile of `records`,
/// lowest-entropy group first. Records without an expected cardinality are
/// ignored. Returns an empty vector when there are fewer records than
/// groups.
pub fn entropy_quantile_means(records: &[&ExperimentRecord], groups: usize) -> Vec<f64> {
    quantile_means(records, groups, |_, u| u)
}

/// Like [`entropy_quantile_means`], but each record contributes
/// `U(p, m) − U(uniform_s, m)`: its shortfall from the largest value
/// reachable at its own `s` and `m`.
///
/// Within one `s` the spread of `U` is mostly the spread of the random
/// draw count `m`, which drowns the entropy effect at a few thousand
/// records. `m` is drawn independently of the masses, so subtracting a
/// function of `m` leaves the expected gap between groups unchanged while
/// removing that noise.
pub fn entropy_quantile_excess(records: &[&ExperimentRecord], groups: usize) -> Vec<f64> {
    quantile_means(records, groups, |r, u| {
        let uniform = MassVector::new(vec![1.0; r.s]).expect("uniform masses are valid");
        u - masses::expected_cardinality(&uniform, r.m).expect("record draw counts are in range")
    })
}

fn quantile_means<F>(records: &[&ExperimentRecord], groups: usize, value: F) -> Vec<f64>
where
    F: Fn(&ExperimentRecord, f64) -> f64,
{
    let mut rows: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| r.expected_cardinality.map(|u| (r.entropy, value(r, u))))
        .collect();
    if groups == 0 || rows.len() < groups {
        return Vec::new();
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = rows.len();
    (0..groups)
        .map(|g| {
            let chunk = &rows[g * n / groups..(g + 1) * n / groups];
            chunk.iter().map(|r| r.1).sum::<f64>() / chunk.len() as f64
        })
        .collect()
}
