//! Scramble-and-overlay: a randomized reduction from OR_t of limited pointer
//! chasing equality to set chasing intersection.
//!
//! Item `j` of the OR instance is conjugated layer by layer with fresh random
//! permutations (`pi` on the left, `rho` on the right, sharing the outermost
//! one), which keeps its equality answer. The `t` scrambled instances are then
//! stacked: the set function of layer `i` maps `x` to the `t` scrambled values
//! at `x`. A yes item always yields a common element of the two final sets;
//! for an all-no instance the expected intersection size is at most
//! `t^{2p} r^{p-1} / n`.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::chasing::{
    sample_bounded_load_function, FunctionTable, IndexSet, IntersectScInstance, LpceInstance,
    OrLpceInstance, PcInstance, ScInstance, SetFunctionTable,
};
use crate::info::c_star_threshold;
use crate::protocol::Transcript;
use crate::{Error, Result};

/// A bijection of `[0, n)` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut inverse = vec![usize::MAX; n];
        for (x, &y) in forward.iter().enumerate() {
            if y >= n || inverse[y] != usize::MAX {
                return Err(Error::domain("not a permutation"));
            }
            inverse[y] = x;
        }
        Ok(Self { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// Fisher-Yates.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut forward: Vec<usize> = (0..n).collect();
        forward.shuffle(rng);
        Self::new(forward).expect("shuffle is a bijection")
    }

    pub fn n(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    #[inline]
    pub fn apply_inverse(&self, y: usize) -> usize {
        self.inverse[y]
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// `pi[j][i]` and `rho[j][i]` for item `j < t` and layer `i < p`, with
/// `pi[j][0] == rho[j][0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationFamily {
    pi: Vec<Vec<Permutation>>,
    rho: Vec<Vec<Permutation>>,
}

impl PermutationFamily {
    pub fn new(pi: Vec<Vec<Permutation>>, rho: Vec<Vec<Permutation>>) -> Result<Self> {
        if pi.is_empty() || pi.len() != rho.len() {
            return Err(Error::domain("pi and rho need the same t >= 1 rows"));
        }
        let p = pi[0].len();
        let n = pi[0].first().map(Permutation::n).unwrap_or(0);
        if p == 0 || n == 0 {
            return Err(Error::domain("permutation family needs p >= 1 and n >= 1"));
        }
        for (a, b) in pi.iter().zip(&rho) {
            if a.len() != p || b.len() != p || a.iter().chain(b).any(|s| s.n() != n) {
                return Err(Error::domain("permutation family is ragged"));
            }
            if a[0] != b[0] {
                return Err(Error::domain("outermost permutations must be shared"));
            }
        }
        Ok(Self { pi, rho })
    }

    pub fn identity(n: usize, p: usize, t: usize) -> Self {
        let rows = vec![vec![Permutation::identity(n); p]; t];
        Self {
            pi: rows.clone(),
            rho: rows,
        }
    }

    /// Independent uniform permutations except the shared outermost pair.
    pub fn sample<R: Rng + ?Sized>(n: usize, p: usize, t: usize, rng: &mut R) -> Self {
        let mut pi = Vec::with_capacity(t);
        let mut rho = Vec::with_capacity(t);
        for _ in 0..t {
            let left: Vec<Permutation> = (0..p).map(|_| Permutation::sample(n, rng)).collect();
            let mut right = Vec::with_capacity(p);
            right.push(left[0].clone());
            right.extend((1..p).map(|_| Permutation::sample(n, rng)));
            pi.push(left);
            rho.push(right);
        }
        Self { pi, rho }
    }

    pub fn t(&self) -> usize {
        self.pi.len()
    }

    pub fn p(&self) -> usize {
        self.pi[0].len()
    }

    pub fn pi(&self, j: usize, i: usize) -> &Permutation {
        &self.pi[j][i]
    }

    pub fn rho(&self, j: usize, i: usize) -> &Permutation {
        &self.rho[j][i]
    }

    pub fn inverse(&self) -> Self {
        let inv = |rows: &[Vec<Permutation>]| {
            rows.iter()
                .map(|row| row.iter().map(Permutation::inverse).collect())
                .collect()
        };
        Self {
            pi: inv(&self.pi),
            rho: inv(&self.rho),
        }
    }
}

/// Size parameters of the reduction, feasible when
/// `t^{2p} r^{p-1} <= n / 10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    pub t: usize,
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// `10 t^{2p} r^{p-1} <= n`, exactly.
pub fn is_feasible(n: usize, p: usize, r: usize, t: usize) -> bool {
    big(10) * big(t).pow(2 * p as u32) * big(r).pow(p as u32 - 1) <= big(n)
}

impl ReductionParams {
    pub fn new(n: usize, p: usize, r: usize, t: usize) -> Result<Self> {
        if n == 0 || p == 0 || r == 0 || t == 0 {
            return Err(Error::domain("n, p, r and t must all be positive"));
        }
        if !is_feasible(n, p, r, t) {
            return Err(Error::Infeasible(format!(
                "t^(2p) r^(p-1) = {}^{} * {}^{} exceeds n/10 = {}/10",
                t,
                2 * p,
                r,
                p - 1,
                n
            )));
        }
        Ok(Self { n, p, r, t })
    }

    /// Parameters of an existing instance, checked for feasibility.
    pub fn of(inst: &OrLpceInstance) -> Result<Self> {
        Self::new(inst.n(), inst.p(), inst.r(), inst.t())
    }

    /// `t^{2p} r^{p-1} / n`, the bound on the expected false intersection.
    pub fn intersection_bound(&self) -> f64 {
        (self.t as f64).powi(2 * self.p as i32) * (self.r as f64).powi(self.p as i32 - 1)
            / self.n as f64
    }
}

/// `t = floor(n^{1/(2p)} / sqrt(10 r))`, i.e. the largest `t` with
/// `(10 r t^2)^p <= n`, computed in integers.
pub fn choose_params(n: usize, p: usize, r: usize) -> Result<ReductionParams> {
    if n == 0 || p == 0 || r == 0 {
        return Err(Error::domain("n, p and r must be positive"));
    }
    let fits = |t: usize| (big(10) * big(r) * big(t) * big(t)).pow(p as u32) <= big(n);
    let mut t = 0;
    while fits(t + 1) {
        t += 1;
    }
    if t == 0 {
        return Err(Error::Infeasible(format!(
            "floor(n^(1/(2p)) / sqrt(10 r)) = 0 for n={n}, p={p}, r={r}"
        )));
    }
    ReductionParams::new(n, p, r, t)
}

/// [`choose_params`] with `r` set to the non-injectivity threshold of `n`.
pub fn choose_params_default(n: usize, p: usize) -> Result<ReductionParams> {
    choose_params(n, p, c_star_threshold(n))
}

fn conjugate(funcs: &[FunctionTable], perms: &[Permutation]) -> Vec<FunctionTable> {
    let p = funcs.len();
    let n = funcs[0].n();
    (0..p)
        .map(|i| {
            let image = (0..n)
                .map(|x| {
                    let x = if i + 1 < p { perms[i + 1].apply_inverse(x) } else { x };
                    perms[i].apply(funcs[i].apply(x))
                })
                .collect();
            FunctionTable::new(image).expect("conjugate stays in range")
        })
        .collect()
}

/// Item `j` conjugated by the family: `f'_i = pi_i . f_i . pi_{i+1}^{-1}` and
/// `f'_{p-1} = pi_{p-1} . f_{p-1}`, likewise with `rho` on the right.
pub fn scramble(
    inst: &LpceInstance,
    j: usize,
    perms: &PermutationFamily,
) -> (Vec<FunctionTable>, Vec<FunctionTable>) {
    assert_eq!(inst.p(), perms.p(), "layer count mismatch");
    (
        conjugate(inst.left().funcs(), &perms.pi[j]),
        conjugate(inst.right().funcs(), &perms.rho[j]),
    )
}

type ScrambledPair = (Vec<FunctionTable>, Vec<FunctionTable>);

/// Stacks scrambled items: `f*_i(x) = {f'_{i,j}(x) : j < t}`.
pub fn overlay(scrambled: &[ScrambledPair]) -> Result<IntersectScInstance> {
    let first = scrambled
        .first()
        .ok_or_else(|| Error::domain("overlay needs t >= 1 instances"))?;
    let p = first.0.len();
    let n = first.0.first().map(FunctionTable::n).unwrap_or(0);
    if scrambled.iter().any(|(l, r)| {
        l.len() != p || r.len() != p || l.iter().chain(r).any(|f| f.n() != n)
    }) {
        return Err(Error::domain("overlay needs shared n and p"));
    }
    let side = |pick: fn(&ScrambledPair) -> &Vec<FunctionTable>| -> Result<ScInstance> {
        ScInstance::new(
            (0..p)
                .map(|i| {
                    let image = (0..n)
                        .map(|x| scrambled.iter().map(|s| pick(s)[i].apply(x)).collect::<IndexSet>())
                        .collect();
                    SetFunctionTable::new(image)
                })
                .collect::<Result<_>>()?,
        )
    };
    IntersectScInstance::new(side(|s| &s.0)?, side(|s| &s.1)?)
}

/// Scramble every item with `perms` and overlay the results.
pub fn scramble_and_overlay(inst: &OrLpceInstance, perms: &PermutationFamily) -> IntersectScInstance {
    assert_eq!(inst.t(), perms.t(), "item count mismatch");
    let scrambled: Vec<_> = (0..inst.t())
        .map(|j| scramble(&inst.items()[j], j, perms))
        .collect();
    overlay(&scrambled).expect("items share n and p")
}

/// Result of reducing an OR instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Some table is `r`-non-injective, so the answer is 1. Found by a
    /// one-bit-per-player round. `equality_holds` reports whether some item
    /// also has equal chase outputs (diagnostic only).
    ShortCircuit { equality_holds: bool },
    Instance(IntersectScInstance),
}

impl Reduction {
    pub fn instance(&self) -> Option<&IntersectScInstance> {
        match self {
            Reduction::Instance(inst) => Some(inst),
            Reduction::ShortCircuit { .. } => None,
        }
    }
}

/// The reduction with the feasibility condition enforced.
pub fn reduce_or_lpce<R: Rng + ?Sized>(inst: &OrLpceInstance, rng: &mut R) -> Result<Reduction> {
    ReductionParams::of(inst)?;
    Ok(reduce_or_lpce_unchecked(inst, rng))
}

/// The reduction without the feasibility check. Completeness holds for any
/// parameters; only the soundness bound needs feasibility.
pub fn reduce_or_lpce_unchecked<R: Rng + ?Sized>(inst: &OrLpceInstance, rng: &mut R) -> Reduction {
    if inst.has_non_injective() {
        return Reduction::ShortCircuit {
            equality_holds: inst.any_equal(),
        };
    }
    let perms = PermutationFamily::sample(inst.n(), inst.p(), inst.t(), rng);
    Reduction::Instance(scramble_and_overlay(inst, &perms))
}

/// Answer and communication of the composed protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndToEnd {
    pub answer: bool,
    pub short_circuit: bool,
    /// `2p` bits for the non-injectivity round plus the solver's transcript.
    pub total_bits: usize,
}

/// Reduces `inst` and hands the result to an INTERSECT(SC) solver.
pub fn end_to_end_solve<R, F>(inst: &OrLpceInstance, solver: F, rng: &mut R) -> Result<EndToEnd>
where
    R: Rng + ?Sized,
    F: FnOnce(&IntersectScInstance) -> (bool, Transcript),
{
    let pre_round = 2 * inst.p();
    Ok(match reduce_or_lpce(inst, rng)? {
        Reduction::ShortCircuit { .. } => EndToEnd {
            answer: true,
            short_circuit: true,
            total_bits: pre_round,
        },
        Reduction::Instance(reduced) => {
            let (answer, transcript) = solver(&reduced);
            EndToEnd {
                answer,
                short_circuit: false,
                total_bits: pre_round + transcript.total_bits(),
            }
        }
    })
}

fn bounded_pc<R: Rng + ?Sized>(n: usize, p: usize, r: usize, rng: &mut R) -> Result<PcInstance> {
    PcInstance::new(
        (0..p)
            .map(|_| sample_bounded_load_function(n, r, rng))
            .collect::<Result<_>>()?,
    )
}

const INSTANCE_ATTEMPTS: usize = 10_000;

/// Uniform over OR instances with answer 0 (so no table is `r`-non-injective
/// and no item has equal outputs), by sampling bounded-load tables and
/// rejecting yes instances.
pub fn sample_zero_or_lpce<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    r: usize,
    t: usize,
    rng: &mut R,
) -> Result<OrLpceInstance> {
    for _ in 0..INSTANCE_ATTEMPTS {
        let items = (0..t)
            .map(|_| LpceInstance::new(bounded_pc(n, p, r, rng)?, bounded_pc(n, p, r, rng)?, r))
            .collect::<Result<Vec<_>>>()?;
        let inst = OrLpceInstance::new(items)?;
        if !inst.eval() {
            return Ok(inst);
        }
    }
    Err(Error::Infeasible(format!(
        "no zero instance found for n={n}, p={p}, r={r}, t={t}"
    )))
}

/// An OR instance with answer 1 through equality in one uniformly chosen
/// item and no `r`-non-injective table: bounded-load tables, then the
/// right side's outermost table is redirected so both chases meet.
pub fn sample_planted_or_lpce<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    r: usize,
    t: usize,
    rng: &mut R,
) -> Result<OrLpceInstance> {
    for _ in 0..INSTANCE_ATTEMPTS {
        let j = rng.gen_range(0..t);
        let mut items = Vec::with_capacity(t);
        for idx in 0..t {
            let left = bounded_pc(n, p, r, rng)?;
            let mut right = bounded_pc(n, p, r, rng)?;
            if idx == j {
                let target = left.eval();
                let at = right.chain()[p - 1];
                let mut funcs = right.into_funcs();
                let mut image = funcs[0].image().to_vec();
                image[at] = target;
                funcs[0] = FunctionTable::new(image)?;
                right = PcInstance::new(funcs)?;
            }
            items.push(LpceInstance::new(left, right, r)?);
        }
        let inst = OrLpceInstance::new(items)?;
        if !inst.has_non_injective() {
            debug_assert!(inst.items()[j].equal());
            return Ok(inst);
        }
    }
    Err(Error::Infeasible(format!(
        "no planted instance without {r}-non-injective tables for n={n}"
    )))
}
