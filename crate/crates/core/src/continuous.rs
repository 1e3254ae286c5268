//! Continuous carriers: the uniform distribution on an interval, the
//! diagonal Gaussian, and a cloud of embedding samples whose per-dimension
//! empirical variance is driven down by gradient steps.
//!
//! Entropies here are differential entropies in nats and can be negative.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Uniform distribution on `[a, b]`, `b > a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalUniform {
    a: f64,
    b: f64,
}

impl IntervalUniform {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return invalid("interval endpoints must be finite");
        }
        if b <= a {
            return invalid(format!("interval needs b > a, got [{a}, {b}]"));
        }
        Ok(IntervalUniform { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

/// `ln(b − a)`.
pub fn uniform_entropy(u: &IntervalUniform) -> f64 {
    u.width().ln()
}

/// Relative slack under which `width / 2ε` is treated as the integer just
/// below it, so that e.g. `(0.3 − 0.1) / 0.1` does not round up to 3.
const COVER_RATIO_SLACK: f64 = 1e-12;

/// Smallest number of closed ε-balls (intervals of width 2ε) whose union
/// contains `[a, b]`, with centers anywhere on the real line:
/// `max(1, ⌈(b − a) / 2ε⌉)`.
pub fn interval_covering_number(u: &IntervalUniform, eps: f64) -> Result<u64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return invalid(format!("epsilon must be positive and finite, got {eps}"));
    }
    let ratio = u.width() / (2.0 * eps);
    let mut n = ratio.ceil();
    if n > 1.0 && ratio - (n - 1.0) <= COVER_RATIO_SLACK * ratio {
        n -= 1.0;
    }
    Ok(n.max(1.0) as u64)
}

/// Independent Gaussian with one positive variance per dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalGaussian {
    variances: Vec<f64>,
}

impl DiagonalGaussian {
    pub fn new(variances: Vec<f64>) -> Result<Self> {
        if variances.is_empty() {
            return invalid("need at least one dimension");
        }
        if let Some((i, v)) = variances
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
        {
            return invalid(format!("variance {i} is {v}; variances must be positive"));
        }
        Ok(DiagonalGaussian { variances })
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }
}

/// `½ Σ_i ln(2πe σ²_i)`.
pub fn gaussian_entropy(g: &DiagonalGaussian) -> f64 {
    let two_pi_e = 2.0 * std::f64::consts::PI * std::f64::consts::E;
    0.5 * g.variances.iter().map(|v| (two_pi_e * v).ln()).sum::<f64>()
}

/// `n` points in `k` dimensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleCloud {
    points: Vec<Vec<f64>>,
}

impl SampleCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return invalid("sample cloud needs at least one point");
        };
        let k = first.len();
        if k == 0 {
            return invalid("points need at least one dimension");
        }
        if let Some(i) = points.iter().position(|p| p.len() != k) {
            return invalid(format!("point {i} has {} dimensions, expected {k}", points[i].len()));
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return invalid("coordinates must be finite");
        }
        Ok(SampleCloud { points })
    }

    /// One-dimensional cloud from scalar samples.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        SampleCloud::new(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn mean(&self) -> Vec<f64> {
        let n = self.len() as f64;
        (0..self.dim())
            .map(|d| self.points.iter().map(|p| p[d]).sum::<f64>() / n)
            .collect()
    }

    /// Per-dimension empirical variance `(1/n) Σ (x_i − x̄)²`.
    pub fn variance(&self) -> Vec<f64> {
        let n = self.len() as f64;
        self.mean()
            .iter()
            .enumerate()
            .map(|(d, &mu)| self.points.iter().map(|p| (p[d] - mu).powi(2)).sum::<f64>() / n)
            .collect()
    }
}

/// Gradient of each dimension's empirical variance with respect to each
/// point's coordinate in that dimension, `(2/n)(x_k − x̄)`. Indexed
/// `[point][dimension]`.
pub fn variance_gradient(cloud: &SampleCloud) -> Vec<Vec<f64>> {
    let scale = 2.0 / cloud.len() as f64;
    let mean = cloud.mean();
    cloud
        .points
        .iter()
        .map(|p| p.iter().zip(&mean).map(|(x, mu)| scale * (x - mu)).collect())
        .collect()
}

/// One gradient step on the per-dimension variance, pulling every point
/// toward the mean by the factor `1 − 2·lr/n`. Requires `0 < lr < n/2`.
pub fn contract_step(cloud: &SampleCloud, lr: f64) -> Result<SampleCloud> {
    let n = cloud.len() as f64;
    if !(lr > 0.0 && lr < n / 2.0) {
        return invalid(format!("learning rate must lie in (0, n/2) = (0, {}), got {lr}", n / 2.0));
    }
    let mean = cloud.mean();
    let keep = 1.0 - 2.0 * lr / n;
    let points = cloud
        .points
        .iter()
        .map(|p| p.iter().zip(&mean).map(|(x, mu)| mu + keep * (x - mu)).collect())
        .collect();
    Ok(SampleCloud { points })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeStep {
    pub a: f64,
    pub b: f64,
    pub entropy: f64,
    pub covering_number: u64,
}

impl RangeStep {
    fn at(u: &IntervalUniform, eps: f64) -> Result<Self> {
        Ok(RangeStep {
            a: u.a,
            b: u.b,
            entropy: uniform_entropy(u),
            covering_number: interval_covering_number(u, eps)?,
        })
    }
}

/// Gradient descent on `ln(b − a)` with respect to the endpoints:
/// `a += lr/(b−a)`, `b −= lr/(b−a)`. The per-step shrink is capped at half
/// the current width, so the interval never inverts. Stops once the width is
/// at most `2ε` (a single ε-ball covers it) or after `max_steps` steps. The
/// returned sequence starts with the initial interval.
pub fn uniform_range_descent(
    u: &IntervalUniform,
    lr: f64,
    eps: f64,
    max_steps: u64,
) -> Result<Vec<RangeStep>> {
    if !(lr > 0.0 && lr.is_finite()) {
        return invalid(format!("learning rate must be positive and finite, got {lr}"));
    }
    let mut current = *u;
    let mut out = vec![RangeStep::at(&current, eps)?];
    for _ in 0..max_steps {
        if current.width() <= 2.0 * eps {
            break;
        }
        let w = current.width();
        let shift = (lr / w).min(w / 4.0);
        current = IntervalUniform::new(current.a + shift, current.b - shift)?;
        out.push(RangeStep::at(&current, eps)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> IntervalUniform {
        IntervalUniform::new(a, b).unwrap()
    }

    #[test]
    fn uniform_entropy_examples() {
        assert_eq!(uniform_entropy(&iv(0.0, 1.0)), 0.0);
        assert!((uniform_entropy(&iv(0.0, std::f64::consts::E)) - 1.0).abs() < 1e-15);
        assert!((uniform_entropy(&iv(0.0, 0.5)) + 2f64.ln()).abs() < 1e-15);
        assert!(IntervalUniform::new(1.0, 1.0).is_err());
        assert!(IntervalUniform::new(2.0, 1.0).is_err());
    }

    #[test]
    fn covering_examples() {
        assert_eq!(interval_covering_number(&iv(0.0, 1.0), 0.5).unwrap(), 1);
        assert_eq!(interval_covering_number(&iv(0.0, 1.0), 0.25).unwrap(), 2);
        assert_eq!(interval_covering_number(&iv(0.0, 4.0), 0.5).unwrap(), 4);
        assert_eq!(interval_covering_number(&iv(0.0, 1.0), 10.0).unwrap(), 1);
        assert_eq!(interval_covering_number(&iv(0.1, 0.3), 0.05).unwrap(), 2);
        assert!(interval_covering_number(&iv(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn gaussian_examples() {
        let unit = 1.0 / (2.0 * std::f64::consts::PI * std::f64::consts::E);
        let g = DiagonalGaussian::new(vec![unit]).unwrap();
        assert!(gaussian_entropy(&g).abs() < 1e-15);
        let g = DiagonalGaussian::new(vec![unit, unit]).unwrap();
        assert!(gaussian_entropy(&g).abs() < 1e-15);
        let g = DiagonalGaussian::new(vec![1.0]).unwrap();
        assert!((gaussian_entropy(&g) - 1.418_938_533_204_672_7).abs() < 1e-15);
        assert!(DiagonalGaussian::new(vec![1.0, 0.0]).is_err());
        assert!(DiagonalGaussian::new(vec![]).is_err());
    }

    #[test]
    fn variance_gradient_examples() {
        let g = variance_gradient(&SampleCloud::from_scalars(&[0.0, 2.0]).unwrap());
        assert_eq!(g, vec![vec![-1.0], vec![1.0]]);

        let g = variance_gradient(&SampleCloud::from_scalars(&[3.0, 3.0, 3.0]).unwrap());
        assert!(g.iter().flatten().all(|&v| v == 0.0));

        let cloud = SampleCloud::new(vec![vec![0.0, 5.0], vec![2.0, 1.0], vec![4.0, 0.0]]).unwrap();
        let g = variance_gradient(&cloud);
        let gx = variance_gradient(&SampleCloud::from_scalars(&[0.0, 2.0, 4.0]).unwrap());
        let gy = variance_gradient(&SampleCloud::from_scalars(&[5.0, 1.0, 0.0]).unwrap());
        for i in 0..3 {
            assert_eq!(g[i][0], gx[i][0]);
            assert_eq!(g[i][1], gy[i][0]);
        }
    }

    #[test]
    fn contract_examples() {
        let cloud = SampleCloud::from_scalars(&[0.0, 2.0]).unwrap();
        assert_eq!(cloud.variance(), vec![1.0]);
        let next = contract_step(&cloud, 0.5).unwrap();
        assert_eq!(next.points(), &[vec![0.5], vec![1.5]]);
        assert_eq!(next.variance(), vec![0.25]);

        let same = SampleCloud::from_scalars(&[1.5, 1.5, 1.5]).unwrap();
        assert_eq!(contract_step(&same, 1.0).unwrap(), same);

        assert!(contract_step(&cloud, 1.0).is_err());
        assert!(contract_step(&cloud, 0.0).is_err());
    }

    #[test]
    fn cloud_validation() {
        assert!(SampleCloud::new(vec![]).is_err());
        assert!(SampleCloud::new(vec![vec![]]).is_err());
        assert!(SampleCloud::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn range_descent_examples() {
        let steps = uniform_range_descent(&iv(0.0, 1.0), 0.1, 0.5, 100).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].covering_number, 1);

        let steps = uniform_range_descent(&iv(0.0, 4.0), 0.1, 0.25, 10_000).unwrap();
        assert_eq!(steps.last().unwrap().covering_number, 1);
        assert!(steps.windows(2).all(|w| w[1].covering_number <= w[0].covering_number));
        assert!(steps.windows(2).all(|w| w[1].entropy < w[0].entropy));

        let first = (steps[0].b - steps[0].a) - (steps[1].b - steps[1].a);
        assert!((first - 2.0 * 0.1 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn range_descent_never_inverts() {
        let steps = uniform_range_descent(&iv(0.0, 1.0), 10.0, 0.01, 1000).unwrap();
        assert!(steps.iter().all(|s| s.b > s.a));
        assert_eq!(steps.last().unwrap().covering_number, 1);
    }
}
