//! Double-double arithmetic (an unevaluated sum `hi + lo` of two `f64`s,
//! about 32 significant digits) and reference evaluators built on it.
//!
//! Central differences at `h = 1e-6` amplify the rounding error of the
//! function being differenced by `1/h`. In plain `f64` that swamps any
//! gradient entry below roughly `1e-4`. Evaluating the probes here keeps the
//! rounding term near `1e-26` and leaves only the `O(h²)` truncation error.
//!
//! The evaluators work straight from the definitions and share no code
//! with [`crate::masses`] or [`crate::continuous`].

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Wide {
    hi: f64,
    lo: f64,
}

const LN_2: Wide = Wide {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Wide {
    pub const ZERO: Wide = Wide { hi: 0.0, lo: 0.0 };
    pub const ONE: Wide = Wide { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Wide { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn scale_pow2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Wide { hi: self.hi * f, lo: self.lo * f }
    }

    pub fn powi(self, mut n: u64) -> Self {
        let mut base = self;
        let mut acc = Wide::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Natural log of a positive value, via `ln x = k ln 2 + 2 atanh((m−1)/(m+1))`
    /// with `x = m · 2^k` and `m ∈ [1/√2, √2)`.
    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "ln of non-positive value {}", self.hi);
        let mut k = self.hi.log2().floor() as i32;
        let mut m = self.scale_pow2(-k);
        if m.hi > std::f64::consts::SQRT_2 {
            m = m.scale_pow2(-1);
            k += 1;
        } else if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale_pow2(1);
            k -= 1;
        }
        let t = (m - Wide::ONE) / (m + Wide::ONE);
        let t2 = t * t;
        let mut power = t;
        let mut series = t;
        for j in 1..200u32 {
            power = power * t2;
            let term = power / Wide::new((2 * j + 1) as f64);
            series = series + term;
            if term.hi.abs() < 1e-34 * series.hi.abs().max(1e-300) {
                break;
            }
        }
        series.scale_pow2(1) + LN_2 * Wide::new(k as f64)
    }
}

impl From<f64> for Wide {
    fn from(x: f64) -> Self {
        Wide::new(x)
    }
}

impl Add for Wide {
    type Output = Wide;
    fn add(self, rhs: Wide) -> Wide {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Wide { hi, lo }
    }
}

impl Neg for Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Wide {
    type Output = Wide;
    fn sub(self, rhs: Wide) -> Wide {
        self + (-rhs)
    }
}

impl Mul for Wide {
    type Output = Wide;
    fn mul(self, rhs: Wide) -> Wide {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Wide { hi, lo }
    }
}

impl Div for Wide {
    type Output = Wide;
    fn div(self, rhs: Wide) -> Wide {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Wide::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Wide::new(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Wide { hi, lo } + Wide::new(q3)
    }
}

impl std::iter::Sum for Wide {
    fn sum<I: Iterator<Item = Wide>>(iter: I) -> Wide {
        iter.fold(Wide::ZERO, |a, b| a + b)
    }
}

/// Entropy in nats, `ln S − (1/S) Σ z_i ln z_i`, skipping zero masses.
pub fn entropy(z: &[f64]) -> Wide {
    let total: Wide = z.iter().map(|&v| Wide::new(v)).sum();
    let weighted_logs: Wide = z
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| Wide::new(v) * Wide::new(v).ln())
        .sum();
    total.ln() - weighted_logs / total
}

/// `Σ_i [1 − (1 − z_i/S)^m]`.
pub fn expected_cardinality(z: &[f64], m: u64) -> Wide {
    let total: Wide = z.iter().map(|&v| Wide::new(v)).sum();
    z.iter()
        .map(|&v| Wide::ONE - (Wide::ONE - Wide::new(v) / total).powi(m))
        .sum()
}

/// `(1/n) Σ (x_i − x̄)²` of one coordinate across points.
pub fn variance(xs: &[f64]) -> Wide {
    let n = Wide::new(xs.len() as f64);
    let mean = xs.iter().map(|&v| Wide::new(v)).sum::<Wide>() / n;
    xs.iter()
        .map(|&v| {
            let d = Wide::new(v) - mean;
            d * d
        })
        .sum::<Wide>()
        / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide_close(a: Wide, hi: f64, lo: f64, tol: f64) -> bool {
        let d = (a - Wide { hi, lo }).to_f64();
        d.abs() <= tol
    }

    #[test]
    fn ln_matches_reference_digits() {
        // ln 3 = 1.0986122886681098 - 9.07129723500153e-17
        assert!(wide_close(Wide::new(3.0).ln(), 1.098_612_288_668_109_8, -9.071_297_235_001_53e-17, 1e-30));
        assert!(wide_close(Wide::new(2.0).ln(), LN_2.hi, LN_2.lo, 1e-31));
        assert_eq!(Wide::ONE.ln().to_f64(), 0.0);
        let l = Wide::new(0.1).ln();
        assert!((l.to_f64() + std::f64::consts::LN_10).abs() < 1e-15);
    }

    #[test]
    fn ln_inverts_products() {
        for (a, b) in [(1.7, 4.2), (0.03, 11.0), (123.0, 0.5)] {
            let lhs = (Wide::new(a) * Wide::new(b)).ln();
            let rhs = Wide::new(a).ln() + Wide::new(b).ln();
            assert!((lhs - rhs).to_f64().abs() < 1e-29);
        }
    }

    #[test]
    fn division_round_trips() {
        let a = Wide::new(1.0) / Wide::new(3.0);
        let back = a * Wide::new(3.0);
        assert!((back - Wide::ONE).to_f64().abs() < 1e-31);
    }

    #[test]
    fn evaluators_agree_with_closed_forms() {
        assert!((entropy(&[1.0, 1.0, 1.0]).to_f64() - 3f64.ln()).abs() < 1e-15);
        assert!((entropy(&[1.0, 2.0]).to_f64() - 0.636_514_168_294_812_8).abs() < 1e-15);
        assert_eq!(expected_cardinality(&[1.0, 1.0], 2).to_f64(), 1.5);
        assert_eq!(variance(&[0.0, 2.0]).to_f64(), 1.0);
    }
}
