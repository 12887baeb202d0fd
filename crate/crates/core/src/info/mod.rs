//! Information theory on finite distributions. All logarithms are base 2.

use crate::{Error, Result};

mod cstar;
mod lemmas;
mod rejection;

pub use cstar::{c_star_threshold, non_injective_probability_exact, union_bound_certifies, EXACT_LIMIT};
pub use lemmas::{
    check_almost_uniform, collision_bounds_check, deficit_distribution, mixture_entropy_check, AlmostUniformReport,
    CollisionReport, MixtureReport, COLLISION_DELTA,
};
pub use rejection::{good_set, rejection_sample, GoodSet, RejectionSampler, SamplerOutcome, STEP_CAP};

/// Normalization tolerance for probability vectors.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A distribution on the labels `0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDistribution {
    probs: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::domain("distribution needs a nonempty support"));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::domain(format!("invalid probability {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::domain(format!("probabilities sum to {total}")));
        }
        Ok(Self { probs })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::domain("weights must be nonnegative with a positive sum"));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Point mass on `label`.
    pub fn point(n: usize, label: usize) -> Self {
        let mut probs = vec![0.0; n];
        probs[label] = 1.0;
        Self { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, label: usize) -> f64 {
        self.probs[label]
    }

    pub fn mass(&self, labels: impl IntoIterator<Item = usize>) -> f64 {
        labels.into_iter().map(|i| self.probs[i]).sum()
    }

    pub fn entropy(&self) -> f64 {
        self.probs.iter().map(|&p| plogp(p)).sum()
    }
}

/// `p * log2(1/p)`, with `0 log 0 = 0`.
fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

pub fn entropy(d: &FiniteDistribution) -> f64 {
    d.entropy()
}

/// `D(p || q)` in bits; `f64::INFINITY` when `q` vanishes somewhere on the
/// support of `p`.
pub fn kl_divergence(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::domain(format!(
            "supports differ in size: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    let mut total = 0.0;
    for (&pi, &qi) in p.probs.iter().zip(&q.probs) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += pi * (pi / qi).log2();
    }
    // rounding can push an exact zero slightly negative
    Ok(total.max(0.0))
}

/// A joint distribution of `(X, Y)` stored row-major, `X` indexing rows.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, probs: Vec<f64>) -> Result<Self> {
        if rows * cols != probs.len() {
            return Err(Error::domain("joint table has the wrong number of cells"));
        }
        let flat = FiniteDistribution::new(probs)?;
        Ok(Self {
            rows,
            cols,
            probs: flat.probs,
        })
    }

    /// The product of two marginals.
    pub fn independent(x: &FiniteDistribution, y: &FiniteDistribution) -> Self {
        let probs = x
            .probs
            .iter()
            .flat_map(|&a| y.probs.iter().map(move |&b| a * b))
            .collect();
        Self {
            rows: x.len(),
            cols: y.len(),
            probs,
        }
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.cols + y]
    }

    pub fn marginal_x(&self) -> FiniteDistribution {
        FiniteDistribution {
            probs: (0..self.rows)
                .map(|x| (0..self.cols).map(|y| self.get(x, y)).sum())
                .collect(),
        }
    }

    pub fn marginal_y(&self) -> FiniteDistribution {
        FiniteDistribution {
            probs: (0..self.cols)
                .map(|y| (0..self.rows).map(|x| self.get(x, y)).sum())
                .collect(),
        }
    }

    pub fn entropy(&self) -> f64 {
        self.probs.iter().map(|&p| plogp(p)).sum()
    }
}

/// `I(X; Y) = sum p(x,y) log(p(x,y) / (p(x) p(y)))`.
pub fn mutual_information(joint: &JointDistribution) -> f64 {
    let px = joint.marginal_x();
    let py = joint.marginal_y();
    let mut total = 0.0;
    for x in 0..joint.rows {
        for y in 0..joint.cols {
            let pxy = joint.get(x, y);
            if pxy > 0.0 {
                total += pxy * (pxy / (px.prob(x) * py.prob(y))).log2();
            }
        }
    }
    total.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use rand::Rng;

    #[test]
    fn rejects_bad_distributions() {
        assert!(FiniteDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(FiniteDistribution::new(vec![1.5, -0.5]).is_err());
        assert!(FiniteDistribution::new(vec![]).is_err());
        assert!(FiniteDistribution::new(vec![0.5, 0.5 + 1e-12]).is_ok());
        assert!(kl_divergence(&FiniteDistribution::uniform(2), &FiniteDistribution::uniform(3)).is_err());
    }

    #[test]
    fn entropy_of_uniform_is_log_n() {
        for k in 0..8 {
            let d = FiniteDistribution::uniform(1 << k);
            assert!((entropy(&d) - k as f64).abs() < 1e-12);
        }
        assert_eq!(FiniteDistribution::point(4, 2).entropy(), 0.0);
    }

    #[test]
    fn kl_cases() {
        let p = FiniteDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let q = FiniteDistribution::new(vec![0.0, 0.5, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &q).unwrap(), f64::INFINITY);
        assert!(kl_divergence(&q, &p).unwrap().is_finite());
        // p uniform on {0,1}, q uniform on {0..3}: one bit
        let p = FiniteDistribution::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        let q = FiniteDistribution::uniform(4);
        assert!((kl_divergence(&p, &q).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_cases() {
        let x = FiniteDistribution::new(vec![0.1, 0.6, 0.3]).unwrap();
        let y = FiniteDistribution::new(vec![0.25, 0.75]).unwrap();
        assert!(mutual_information(&JointDistribution::independent(&x, &y)).abs() < 1e-9);
        for n in [2usize, 3, 8, 10] {
            let mut probs = vec![0.0; n * n];
            for i in 0..n {
                probs[i * n + i] = 1.0 / n as f64;
            }
            let joint = JointDistribution::new(n, n, probs).unwrap();
            // direct summation: n terms of (1/n) log2(n)
            let oracle: f64 = (0..n).map(|_| (1.0 / n as f64) * (n as f64).log2()).sum();
            assert!((mutual_information(&joint) - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn mutual_information_identity_on_random_joints() {
        let mut rng = rng_from_seed(88);
        for _ in 0..200 {
            let weights: Vec<f64> = (0..64)
                .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen::<f64>() })
                .collect();
            let total: f64 = weights.iter().sum();
            let joint = JointDistribution::new(8, 8, weights.iter().map(|w| w / total).collect()).unwrap();
            let lhs = mutual_information(&joint);
            let rhs = joint.marginal_x().entropy() + joint.marginal_y().entropy() - joint.entropy();
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }
}
