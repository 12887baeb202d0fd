//! Simulating `P` from independent draws of `Q` by rejection sampling on the
//! substate Good set.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{kl_divergence, FiniteDistribution};
use crate::{Error, Result};

/// Steps after which [`rejection_sample`] gives up.
pub const STEP_CAP: u64 = 1_000_000;

/// `Good = {i : P(i) 2^{-(a+1)/eps} <= Q(i)}` with `a = D(P || Q)`,
/// restricted to the support of `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodSet {
    /// Ascending labels.
    pub members: Vec<usize>,
    /// `D(P || Q)` in bits.
    pub divergence: f64,
    /// `2^{-(a+1)/eps}`.
    pub scale: f64,
    /// `Pr_P[Good]`.
    pub mass: f64,
}

impl GoodSet {
    pub fn contains(&self, label: usize) -> bool {
        self.members.binary_search(&label).is_ok()
    }
}

pub fn good_set(p: &FiniteDistribution, q: &FiniteDistribution, eps: f64) -> Result<GoodSet> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let divergence = kl_divergence(p, q)?;
    if divergence.is_infinite() {
        return Err(Error::domain("D(P || Q) is infinite"));
    }
    let scale = (-(divergence + 1.0) / eps).exp2();
    let members: Vec<usize> = (0..p.len())
        .filter(|&i| p.prob(i) > 0.0 && p.prob(i) * scale <= q.prob(i))
        .collect();
    let mass = p.mass(members.iter().copied()).min(1.0);
    Ok(GoodSet {
        members,
        divergence,
        scale,
        mass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerOutcome {
    /// The accepted label, or `None` when the second coin stopped the
    /// process.
    pub value: Option<usize>,
    /// Number of `Q` draws consumed (at least 1).
    pub steps: u64,
}

impl SamplerOutcome {
    /// The stopping index `R`: `steps` on acceptance and `0` on rejection.
    pub fn r(&self) -> u64 {
        if self.value.is_some() {
            self.steps
        } else {
            0
        }
    }
}

/// Reusable sampler; [`rejection_sample`] builds one per call.
#[derive(Clone, Debug)]
pub struct RejectionSampler {
    good: GoodSet,
    in_good: Vec<bool>,
    accept: Vec<f64>,
    stop: f64,
    draws: WeightedIndex<f64>,
}

impl RejectionSampler {
    pub fn new(p: &FiniteDistribution, q: &FiniteDistribution, eps: f64) -> Result<Self> {
        let good = good_set(p, q, eps)?;
        let mut in_good = vec![false; p.len()];
        let mut accept = vec![0.0; p.len()];
        for &i in &good.members {
            in_good[i] = true;
            accept[i] = (p.prob(i) * good.scale / q.prob(i)).min(1.0);
        }
        let c = good.scale;
        let stop = (c * (1.0 - good.mass) / (1.0 - c * good.mass)).clamp(0.0, 1.0);
        let draws = WeightedIndex::new(q.probs()).map_err(|e| Error::domain(e.to_string()))?;
        Ok(Self {
            good,
            in_good,
            accept,
            stop,
            draws,
        })
    }

    pub fn good(&self) -> &GoodSet {
        &self.good
    }

    /// Probability of the second (rejecting) coin.
    pub fn stop_probability(&self) -> f64 {
        self.stop
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SamplerOutcome> {
        for steps in 1..=STEP_CAP {
            let gamma = self.draws.sample(rng);
            if self.in_good[gamma] && rng.gen::<f64>() < self.accept[gamma] {
                return Ok(SamplerOutcome {
                    value: Some(gamma),
                    steps,
                });
            }
            if rng.gen::<f64>() < self.stop {
                return Ok(SamplerOutcome { value: None, steps });
            }
        }
        Err(Error::StepCap(STEP_CAP))
    }
}

/// One run of the process: draw `g ~ Q`; if `g` is Good accept it with
/// probability `P(g) 2^{-(a+1)/eps} / Q(g)`; otherwise (or if that coin
/// fails) stop with no value with probability
/// `2^{-(a+1)/eps} (1 - P(Good)) / (1 - 2^{-(a+1)/eps} P(Good))`; repeat.
///
/// Every step terminates with probability exactly `2^{-(a+1)/eps}`.
pub fn rejection_sample<R: Rng + ?Sized>(
    p: &FiniteDistribution,
    q: &FiniteDistribution,
    eps: f64,
    rng: &mut R,
) -> Result<SamplerOutcome> {
    RejectionSampler::new(p, q, eps)?.sample(rng)
}
