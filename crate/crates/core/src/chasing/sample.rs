//! Samplers for game instances. All of them are deterministic given the
//! generator state.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{
    FunctionTable, IndexSet, IntersectScInstance, LpceInstance, OrLpceInstance, PcInstance,
    ScInstance, SetFunctionTable,
};
use crate::{Error, Result};

const BOUNDED_LOAD_ATTEMPTS: usize = 100_000;

/// Each entry independent and uniform on `[0, n)`.
pub fn sample_uniform_function<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FunctionTable {
    assert!(n >= 1);
    FunctionTable {
        image: (0..n).map(|_| rng.gen_range(0..n)).collect(),
    }
}

/// Uniform permutation by Fisher-Yates.
pub fn sample_uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FunctionTable {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    FunctionTable { image }
}

/// Uniform over functions that are not `r`-non-injective (max load < r).
///
/// `r = 2` is exactly the uniform permutation; otherwise rejection from the
/// uniform function, which is cheap whenever `r` is at or above the usual
/// threshold.
pub fn sample_bounded_load_function<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<FunctionTable> {
    match r {
        0 | 1 => Err(Error::Infeasible(format!(
            "every function is {r}-non-injective"
        ))),
        2 => Ok(sample_uniform_permutation(n, rng)),
        _ if r > n => Ok(sample_uniform_function(n, rng)),
        _ => {
            for _ in 0..BOUNDED_LOAD_ATTEMPTS {
                let f = sample_uniform_function(n, rng);
                if f.max_load() < r {
                    return Ok(f);
                }
            }
            Err(Error::Infeasible(format!(
                "no function with max load < {r} on n = {n} after {BOUNDED_LOAD_ATTEMPTS} draws"
            )))
        }
    }
}

pub fn sample_uniform_pc<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> PcInstance {
    assert!(p >= 1);
    PcInstance {
        funcs: (0..p).map(|_| sample_uniform_function(n, rng)).collect(),
    }
}

pub fn sample_uniform_lpce<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    r: usize,
    rng: &mut R,
) -> LpceInstance {
    assert!(r >= 1);
    let left = sample_uniform_pc(n, p, rng);
    let right = sample_uniform_pc(n, p, rng);
    LpceInstance { left, right, r }
}

pub fn sample_uniform_or_lpce<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    r: usize,
    t: usize,
    rng: &mut R,
) -> OrLpceInstance {
    assert!(t >= 1);
    OrLpceInstance {
        items: (0..t).map(|_| sample_uniform_lpce(n, p, r, rng)).collect(),
    }
}

/// A set function whose image sizes are uniform on `0..=max_out` (capped at
/// `n`) with elements drawn without replacement.
pub fn sample_set_function<R: Rng + ?Sized>(
    n: usize,
    max_out: usize,
    rng: &mut R,
) -> SetFunctionTable {
    assert!(n >= 1);
    let cap = max_out.min(n);
    let image = (0..n)
        .map(|_| {
            let size = rng.gen_range(0..=cap);
            index::sample(rng, n, size).into_iter().collect::<IndexSet>()
        })
        .collect();
    SetFunctionTable { image }
}

pub fn sample_uniform_intersect_sc<R: Rng + ?Sized>(
    n: usize,
    p: usize,
    max_out: usize,
    rng: &mut R,
) -> IntersectScInstance {
    assert!(p >= 1);
    let mut side = || ScInstance {
        funcs: (0..p).map(|_| sample_set_function(n, max_out, rng)).collect(),
    };
    let left = side();
    let right = side();
    IntersectScInstance { left, right }
}
