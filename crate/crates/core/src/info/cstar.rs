//! The non-injectivity threshold: the smallest `r` such that a uniformly
//! random `f: [n] -> [n]` is `r`-non-injective with probability at most
//! `1 / (2 n^2)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Largest `n` for which the threshold is computed exactly.
pub const EXACT_LIMIT: usize = 12;

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigUint::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `(#{f : max load >= r}, n^n)` by a dynamic program over bins: place
/// `j < r` of the remaining labeled balls into each bin in turn.
pub fn non_injective_probability_exact(n: usize, r: usize) -> (BigUint, BigUint) {
    assert!(n >= 1 && r >= 1);
    let total = BigUint::from(n).pow(n as u32);
    let choose = binomials(n);
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for _bin in 0..n {
        let mut next = vec![BigUint::zero(); n + 1];
        for (placed, count) in ways.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for j in 0..r.min(n - placed + 1) {
                next[placed + j] += count * &choose[n - placed][j];
            }
        }
        ways = next;
    }
    let bounded = &ways[n];
    (&total - bounded, total)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n * C(n, r) / n^r <= 1 / (2 n^2)`, an upper bound on the probability of
/// `r`-non-injectivity, checked in exact integers.
pub fn union_bound_certifies(n: usize, r: usize) -> bool {
    let n_big = BigUint::from(n);
    BigUint::from(2u32) * n_big.pow(3) * binomial(n, r) <= n_big.pow(r as u32)
}

/// Exact for `n <= EXACT_LIMIT`; above that the union bound certificate,
/// which may overshoot the true threshold but never undershoots it.
pub fn c_star_threshold(n: usize) -> usize {
    assert!(n >= 1);
    let holds = |r: usize| {
        if n <= EXACT_LIMIT {
            let (bad, total) = non_injective_probability_exact(n, r);
            bad * BigUint::from(2 * n * n) <= total
        } else {
            union_bound_certifies(n, r)
        }
    };
    // max load never exceeds n, so r = n + 1 always qualifies
    (1..=n + 1).find(|&r| holds(r)).expect("r = n + 1 qualifies")
}
