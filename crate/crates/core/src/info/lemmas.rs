//! Exact checks of the high-entropy lemmas used by the lower bound.

use super::FiniteDistribution;
use crate::{Error, Result};

/// Entropy deficit under which the collision bounds are claimed.
pub const COLLISION_DELTA: f64 = 1.0 / (48.0 * 48.0);

/// Slack for comparing floating point sums against exact bounds.
const SLACK: f64 = 1e-12;

fn require_entropy(d: &FiniteDistribution, delta: f64, what: &str) -> Result<()> {
    let n = d.len() as f64;
    let h = d.entropy();
    if h < n.log2() - delta - SLACK {
        return Err(Error::domain(format!(
            "{what}: entropy {h} is below log n - delta = {}",
            n.log2() - delta
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlmostUniformReport {
    /// `sqrt(4 delta n / |S|)`.
    pub big_delta: f64,
    pub applicable: bool,
    pub pr_in_set: f64,
    /// `|S| / n * (1 - big_delta)`.
    pub lower_bound: f64,
    /// `None` when not applicable.
    pub holds: Option<bool>,
}

/// For `H(X) >= log n - delta`, checks `Pr[X in S] >= |S|/n (1 - D)` with
/// `D = sqrt(4 delta n / |S|)`, applicable when `D <= 1/10`.
pub fn check_almost_uniform(
    d: &FiniteDistribution,
    s: &[usize],
    delta: f64,
) -> Result<AlmostUniformReport> {
    if !(delta >= 0.0) {
        return Err(Error::domain("delta must be nonnegative"));
    }
    require_entropy(d, delta, "almost-uniform check")?;
    let n = d.len();
    let mut seen = vec![false; n];
    for &x in s {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::domain(format!("S must be a subset of [0, {n}), bad element {x}")));
        }
    }
    let size = s.len() as f64;
    let big_delta = if s.is_empty() {
        f64::INFINITY
    } else {
        (4.0 * delta * n as f64 / size).sqrt()
    };
    let applicable = big_delta <= 0.1;
    let pr_in_set = d.mass(s.iter().copied());
    let lower_bound = size / n as f64 * (1.0 - big_delta);
    Ok(AlmostUniformReport {
        big_delta,
        applicable,
        pr_in_set,
        lower_bound,
        holds: applicable.then(|| pr_in_set >= lower_bound - SLACK),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionReport {
    pub n: usize,
    pub pr_equal: f64,
    /// `1 / (8n)`.
    pub equal_bound: f64,
    pub equal_holds: bool,
    /// `Pr[X != Y] >= 1/4`; `None` for `n < 4`.
    pub unequal_holds: Option<bool>,
}

impl CollisionReport {
    pub fn holds(&self) -> bool {
        self.equal_holds && self.unequal_holds.unwrap_or(true)
    }
}

/// For independent `X`, `Y` on `[n]` with entropy at least
/// `log n - 48^-2`, computes `Pr[X = Y]` exactly and checks
/// `Pr[X = Y] >= 1/(8n)` and, for `n >= 4`, `Pr[X != Y] >= 1/4`.
pub fn collision_bounds_check(
    x: &FiniteDistribution,
    y: &FiniteDistribution,
) -> Result<CollisionReport> {
    if x.len() != y.len() {
        return Err(Error::domain("X and Y must live on the same [n]"));
    }
    require_entropy(x, COLLISION_DELTA, "X")?;
    require_entropy(y, COLLISION_DELTA, "Y")?;
    let n = x.len();
    let pr_equal: f64 = x.probs().iter().zip(y.probs()).map(|(a, b)| a * b).sum();
    let equal_bound = 1.0 / (8.0 * n as f64);
    Ok(CollisionReport {
        n,
        pr_equal,
        equal_bound,
        equal_holds: pr_equal >= equal_bound - SLACK,
        unequal_holds: (n >= 4).then(|| 1.0 - pr_equal >= 0.25 - SLACK),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixtureReport {
    /// `H(X_Y)`.
    pub mixture_entropy: f64,
    /// `1 + sum Pr[Y=i] H(X_i)`.
    pub bound: f64,
    pub holds: bool,
}

/// Builds the law of `X_Y` for independent `X_0`, `X_1`, `Y in {0,1}` and
/// checks `H(X_Y) <= 1 + Pr[Y=0] H(X_0) + Pr[Y=1] H(X_1)`.
pub fn mixture_entropy_check(
    x0: &FiniteDistribution,
    x1: &FiniteDistribution,
    y: &FiniteDistribution,
) -> Result<MixtureReport> {
    if y.len() != 2 {
        return Err(Error::domain("Y must be distributed on {0, 1}"));
    }
    if x0.len() != x1.len() {
        return Err(Error::domain("X_0 and X_1 must share a support"));
    }
    let q = y.prob(0);
    let mix = FiniteDistribution::from_weights(
        &x0.probs()
            .iter()
            .zip(x1.probs())
            .map(|(a, b)| q * a + (1.0 - q) * b)
            .collect::<Vec<_>>(),
    )?;
    let mixture_entropy = mix.entropy();
    let bound = 1.0 + q * x0.entropy() + (1.0 - q) * x1.entropy();
    Ok(MixtureReport {
        mixture_entropy,
        bound,
        holds: mixture_entropy <= bound + 1e-9,
    })
}

/// `heavy` atoms of equal weight `a >= 1/n`, the others sharing the rest,
/// with `a` bisected until the entropy is `log n - delta`.
pub fn deficit_distribution(n: usize, heavy: usize, delta: f64) -> Result<FiniteDistribution> {
    if heavy == 0 || heavy >= n {
        return Err(Error::domain("need 1 <= heavy < n"));
    }
    let target = (n as f64).log2() - delta;
    if !(delta >= 0.0) || target < (heavy as f64).log2() {
        return Err(Error::domain(format!("deficit {delta} out of reach with {heavy} heavy atoms")));
    }
    let build = |a: f64| {
        let b = (1.0 - heavy as f64 * a) / (n - heavy) as f64;
        let mut w = vec![b.max(0.0); n];
        w[..heavy].iter_mut().for_each(|x| *x = a);
        FiniteDistribution::from_weights(&w)
    };
    // entropy decreases as a grows from 1/n to 1/heavy
    let (mut lo, mut hi) = (1.0 / n as f64, 1.0 / heavy as f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if build(mid)?.entropy() > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    build(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_level(n: usize, m: usize, delta: f64) -> FiniteDistribution {
        deficit_distribution(n, m, delta).unwrap()
    }

    #[test]
    fn uniform_is_the_equality_case() {
        let d = FiniteDistribution::uniform(16);
        let r = check_almost_uniform(&d, &[1, 2, 3, 4, 5, 6, 7, 8], 0.0).unwrap();
        assert_eq!(r.big_delta, 0.0);
        assert!((r.pr_in_set - r.lower_bound).abs() < 1e-15);
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn tilted_distribution_at_n64() {
        let d = two_level(64, 8, 1e-3);
        assert!((d.entropy() - (6.0 - 1e-3)).abs() < 1e-9);
        let light: Vec<usize> = (32..64).collect();
        let r = check_almost_uniform(&d, &light, 1e-3).unwrap();
        assert!(r.applicable);
        assert_eq!(r.holds, Some(true));
        assert!(r.pr_in_set < 0.5);
    }

    #[test]
    fn large_delta_is_not_applicable() {
        let d = FiniteDistribution::uniform(8);
        let r = check_almost_uniform(&d, &[0], 0.01).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.holds, None);
        assert!(check_almost_uniform(&d, &[], 0.0).unwrap().holds.is_none());
        assert!(check_almost_uniform(&FiniteDistribution::point(8, 0), &[0], 0.01).is_err());
        assert!(check_almost_uniform(&d, &[0, 0], 0.01).is_err());
    }

    #[test]
    fn collision_cases() {
        for n in [2usize, 4, 16] {
            let u = FiniteDistribution::uniform(n);
            let r = collision_bounds_check(&u, &u).unwrap();
            assert!((r.pr_equal - 1.0 / n as f64).abs() < 1e-15);
            assert!(r.holds());
            assert_eq!(r.unequal_holds.is_some(), n >= 4);
        }
        let x = two_level(4, 1, COLLISION_DELTA);
        let y = two_level(4, 3, COLLISION_DELTA);
        assert!(collision_bounds_check(&x, &y).unwrap().holds());
        assert!(collision_bounds_check(&FiniteDistribution::point(4, 0), &x).is_err());
    }

    #[test]
    fn mixture_cases() {
        let x0 = FiniteDistribution::new(vec![0.1, 0.2, 0.7]).unwrap();
        let y = FiniteDistribution::new(vec![0.3, 0.7]).unwrap();
        let r = mixture_entropy_check(&x0, &x0, &y).unwrap();
        assert!((r.mixture_entropy - x0.entropy()).abs() < 1e-12);
        assert!(r.holds);

        let x1 = FiniteDistribution::new(vec![0.5, 0.5, 0.0]).unwrap();
        let det = FiniteDistribution::point(2, 1);
        let r = mixture_entropy_check(&x0, &x1, &det).unwrap();
        assert!((r.bound - 1.0 - r.mixture_entropy).abs() < 1e-12);

        // fair Y selecting between two distinct point masses is tight
        let r = mixture_entropy_check(
            &FiniteDistribution::point(3, 0),
            &FiniteDistribution::point(3, 2),
            &FiniteDistribution::uniform(2),
        )
        .unwrap();
        assert!((r.mixture_entropy - 1.0).abs() < 1e-12);
        assert!((r.bound - 1.0).abs() < 1e-12);
        assert!(r.holds);
        assert!(mixture_entropy_check(&x0, &x0, &FiniteDistribution::uniform(3)).is_err());
    }
}
