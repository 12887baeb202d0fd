//! Check suites. Each check yields one CSV row
//! `suite,check,measured,threshold,passed`; every random choice is derived
//! from the master seed, so a rerun with the same seed prints the same bytes.

use std::fmt;

use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::chasing::{
    sample_uniform_function, sample_uniform_intersect_sc, IndexSet, IntersectScInstance, ScInstance,
    SetFunctionTable,
};
use crate::gadgets::{build_distance_gadget, build_matching_gadget, build_reachability_gadget, two_coloring, GraphStream};
use crate::info::{
    c_star_threshold, check_almost_uniform, collision_bounds_check, deficit_distribution, good_set,
    kl_divergence, mixture_entropy_check, mutual_information, non_injective_probability_exact,
    FiniteDistribution, JointDistribution, RejectionSampler, COLLISION_DELTA, EXACT_LIMIT,
};
use crate::protocol::{forward_sc_protocol, reverse_order_sc_protocol};
use crate::reduction::{
    choose_params, reduce_or_lpce, reduce_or_lpce_unchecked, sample_planted_or_lpce, sample_zero_or_lpce,
    ReductionParams,
};
use crate::seed::{derive_seed, trial_rng, Rng as SeededRng};
use crate::streaming::{
    oracle_distance, oracle_perfect_matching, oracle_reachable, run_streaming, BidirectionalBfs,
    DirectedFrontier, ForwardBfs, UnionFind,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Info,
    Reduction,
    Gadgets,
    Protocols,
    Streaming,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["info", "reduction", "gadgets", "protocols", "streaming", "all"];

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "info" => Suite::Info,
            "reduction" => Suite::Reduction,
            "gadgets" => Suite::Gadgets,
            "protocols" => Suite::Protocols,
            "streaming" => Suite::Streaming,
            "all" => Suite::All,
            other => return Err(Error::domain(format!("unknown suite {other:?}"))),
        })
    }

    fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub measured: String,
    pub threshold: String,
    pub passed: bool,
}

pub const CSV_HEADER: &str = "suite,check,measured,threshold,passed";

pub fn to_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.suite, r.check, r.measured, r.threshold, r.passed));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Trial count for the large Monte Carlo checks; smaller checks scale
    /// from it.
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 7, trials: 100_000 }
    }
}

impl VerifyConfig {
    fn rng(&self, tag: u64, index: u64) -> SeededRng {
        trial_rng(derive_seed(self.seed, tag), index)
    }

    fn scaled(&self, n: usize) -> usize {
        ((self.trials as u128 * n as u128) / 100_000).max(1) as usize
    }
}

/// The graph builders under test; swapped out by mutation tests.
#[derive(Clone, Copy)]
pub struct GadgetBuilders {
    pub distance: fn(&IntersectScInstance) -> GraphStream,
    pub reachability: fn(&IntersectScInstance) -> GraphStream,
    pub matching: fn(&IntersectScInstance) -> GraphStream,
}

impl Default for GadgetBuilders {
    fn default() -> Self {
        Self {
            distance: build_distance_gadget,
            reachability: build_reachability_gadget,
            matching: build_matching_gadget,
        }
    }
}

struct Rows {
    suite: &'static str,
    rows: Vec<CheckRow>,
}

impl Rows {
    fn new(suite: &'static str) -> Self {
        Self { suite, rows: Vec::new() }
    }

    fn push(&mut self, check: impl Into<String>, measured: impl fmt::Display, threshold: impl fmt::Display, passed: bool) {
        self.rows.push(CheckRow {
            suite: self.suite,
            check: check.into(),
            measured: measured.to_string(),
            threshold: threshold.to_string(),
            passed,
        });
    }

    fn count(&mut self, check: impl Into<String>, failures: usize) {
        self.push(check, failures, "==0", failures == 0);
    }

    fn exact<T: fmt::Display + PartialEq>(&mut self, check: impl Into<String>, measured: T, want: T) {
        let ok = measured == want;
        self.push(check, measured, format!("=={want}"), ok);
    }

    fn at_most(&mut self, check: impl Into<String>, measured: f64, bound: f64) {
        self.push(check, num(measured), format!("<={}", num(bound)), measured <= bound);
    }

    fn at_least(&mut self, check: impl Into<String>, measured: f64, bound: f64) {
        self.push(check, num(measured), format!(">={}", num(bound)), measured >= bound);
    }
}

/// Six decimals, or scientific notation for small nonzero values.
fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:.3e}")
    } else {
        format!("{x:.6}")
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckRow> {
    match suite {
        Suite::Info => info_suite(cfg),
        Suite::Reduction => reduction_suite(cfg),
        Suite::Gadgets => gadgets_suite(cfg, &GadgetBuilders::default()),
        Suite::Protocols => protocols_suite(cfg),
        Suite::Streaming => streaming_suite(cfg),
        Suite::All => [Suite::Info, Suite::Reduction, Suite::Gadgets, Suite::Protocols, Suite::Streaming]
            .into_iter()
            .flat_map(|s| run_suite(s, cfg))
            .collect(),
    }
}

fn random_distribution<R: Rng + ?Sized>(n: usize, zero_rate: f64, rng: &mut R) -> FiniteDistribution {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(zero_rate) { 0.0 } else { rng.gen::<f64>() })
            .collect();
        if let Ok(d) = FiniteDistribution::from_weights(&w) {
            return d;
        }
    }
}

/// Pearson statistic of `counts` against `probs`, restricted to positive
/// `probs`, and its upper-tail probability.
pub fn chi_square_p_value(counts: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&c, &p) in counts.iter().zip(probs) {
        if p > 0.0 {
            let e = p * total as f64;
            stat += (c as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    if cells < 2 {
        return 1.0;
    }
    1.0 - ChiSquared::new((cells - 1) as f64).expect("df >= 1").cdf(stat)
}

pub fn info_suite(cfg: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows = Rows::new("info");

    let err = (0..8)
        .map(|k| (FiniteDistribution::uniform(1 << k).entropy() - k as f64).abs())
        .fold(0.0, f64::max);
    rows.at_most("entropy_uniform_max_error", err, 1e-12);

    let mut rng = cfg.rng(1, 0);
    let mut mi_err: f64 = 0.0;
    let mut kl_self: f64 = 0.0;
    for _ in 0..200 {
        let w: Vec<f64> = (0..64).map(|_| rng.gen::<f64>()).collect();
        let total: f64 = w.iter().sum();
        let joint = JointDistribution::new(8, 8, w.iter().map(|x| x / total).collect()).unwrap();
        let rhs = joint.marginal_x().entropy() + joint.marginal_y().entropy() - joint.entropy();
        mi_err = mi_err.max((mutual_information(&joint) - rhs).abs());
        let d = joint.marginal_x();
        kl_self = kl_self.max(kl_divergence(&d, &d).unwrap());
    }
    rows.at_most("mi_identity_max_error", mi_err, 1e-9);
    rows.at_most("kl_self_max", kl_self, 0.0);

    // almost-uniform fact on mildly tilted distributions
    let mut applicable = 0usize;
    let mut violated = 0usize;
    let cases = cfg.scaled(2000);
    for i in 0..cases {
        let mut rng = cfg.rng(2, i as u64);
        let n = [16usize, 32, 64][i % 3];
        let eta = rng.gen_range(0.0..0.05);
        let w: Vec<f64> = (0..n).map(|_| 1.0 + eta * rng.gen_range(-1.0..1.0)).collect();
        let d = FiniteDistribution::from_weights(&w).unwrap();
        let delta = ((n as f64).log2() - d.entropy()).max(0.0);
        let size = rng.gen_range(n / 2..=n);
        let s: Vec<usize> = rand::seq::index::sample(&mut rng, n, size).into_vec();
        let report = check_almost_uniform(&d, &s, delta).unwrap();
        if let Some(holds) = report.holds {
            applicable += 1;
            violated += usize::from(!holds);
        }
    }
    rows.count("almost_uniform_violations", violated);
    rows.push("almost_uniform_applicable_cases", applicable, ">=1", applicable >= 1);

    // collision bounds on tilted pairs at entropy deficit exactly 48^-2
    let mut failures = 0usize;
    let mut worst_ratio = f64::INFINITY;
    for n in [4usize, 16, 64] {
        for a in 1..n {
            for b in [1, n / 2, n - 1] {
                let (Ok(x), Ok(y)) = (
                    deficit_distribution(n, a, COLLISION_DELTA),
                    deficit_distribution(n, b.max(1), COLLISION_DELTA),
                ) else {
                    continue;
                };
                let report = collision_bounds_check(&x, &y).unwrap();
                failures += usize::from(!report.holds());
                worst_ratio = worst_ratio.min(report.pr_equal / report.equal_bound);
            }
        }
    }
    rows.count("collision_bound_violations", failures);
    rows.at_least("collision_min_ratio_to_bound", worst_ratio, 1.0);

    let mut failures = 0usize;
    let mut slack = f64::INFINITY;
    for i in 0..cfg.scaled(10_000) {
        let mut rng = cfg.rng(3, i as u64);
        let n = rng.gen_range(2..=16);
        let x0 = random_distribution(n, 0.2, &mut rng);
        let x1 = random_distribution(n, 0.2, &mut rng);
        let y = random_distribution(2, 0.1, &mut rng);
        let r = mixture_entropy_check(&x0, &x1, &y).unwrap();
        failures += usize::from(!r.holds);
        slack = slack.min(r.bound - r.mixture_entropy);
    }
    rows.count("mixture_entropy_violations", failures);
    rows.at_least("mixture_entropy_min_slack", slack, -1e-9);

    // substate theorem on random triples
    let mut failures = 0usize;
    for i in 0..cfg.scaled(1000) {
        let mut rng = cfg.rng(4, i as u64);
        let n = rng.gen_range(2..=10);
        let p = random_distribution(n, 0.3, &mut rng);
        let q = random_distribution(n, 0.0, &mut rng);
        let eps = rng.gen_range(0.05..0.95);
        let g = good_set(&p, &q, eps).unwrap();
        failures += usize::from(g.mass < 1.0 - eps - 1e-12);
    }
    rows.count("good_set_mass_violations", failures);

    // rejection sampler: a mild tilt (Good is the whole support) and a heavy
    // atom under tiny Q mass (Good misses it)
    let pairs = [
        (
            "tilted",
            FiniteDistribution::new(vec![0.10, 0.14, 0.12, 0.16, 0.08, 0.15, 0.13, 0.12]).unwrap(),
            FiniteDistribution::uniform(8),
            0.5,
        ),
        (
            "heavy_atom",
            FiniteDistribution::new(vec![0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1]).unwrap(),
            FiniteDistribution::from_weights(&[1e-4, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]).unwrap(),
            0.9,
        ),
    ];
    for (tag, (label, p, q, eps)) in pairs.into_iter().enumerate() {
        let sampler = RejectionSampler::new(&p, &q, eps).unwrap();
        let bound = 1.0 / sampler.good().scale;
        let draws = cfg.trials;
        let mut rng = cfg.rng(5, tag as u64);
        let mut counts = [0u64; 8];
        let (mut sum, mut sum_sq, mut bottoms) = (0.0, 0.0, 0usize);
        for _ in 0..draws {
            let out = sampler.sample(&mut rng).unwrap();
            match out.value {
                Some(v) => counts[v] += 1,
                None => bottoms += 1,
            }
            sum += out.steps as f64;
            sum_sq += (out.steps as f64).powi(2);
        }
        let good_probs: Vec<f64> = (0..8)
            .map(|i| if sampler.good().contains(i) { p.prob(i) / sampler.good().mass } else { 0.0 })
            .collect();
        rows.at_least(format!("rejection_{label}_chi_square_p_value"), chi_square_p_value(&counts, &good_probs), 1e-3);
        let accepted: u64 = counts.iter().sum();
        let tv = 0.5
            * (0..8)
                .map(|i| (counts[i] as f64 / accepted as f64 - good_probs[i]).abs())
                .sum::<f64>();
        // about three times the expected sampling noise at small trial counts
        let tv_limit = 0.02f64.max((8.0 / accepted as f64).sqrt());
        rows.at_most(format!("rejection_{label}_total_variation"), tv, tv_limit);
        let mean = sum / draws as f64;
        let sd = ((sum_sq / draws as f64 - mean * mean).max(0.0) / draws as f64).sqrt();
        rows.at_most(format!("rejection_{label}_mean_steps"), mean, bound + 3.0 * sd);
        let want = 1.0 - sampler.good().mass;
        let sigma = (want * (1.0 - want) / draws as f64).sqrt();
        rows.at_most(
            format!("rejection_{label}_bottom_rate_deviation"),
            (bottoms as f64 / draws as f64 - want).abs(),
            3.0 * sigma,
        );
    }

    // non-injectivity threshold
    let mut failures = 0usize;
    for n in 2..=EXACT_LIMIT {
        let r = c_star_threshold(n);
        let ok = |r: usize| {
            let (bad, total) = non_injective_probability_exact(n, r);
            bad * num_bigint::BigUint::from(2 * n * n) <= total
        };
        failures += usize::from(!ok(r) || (r > 1 && ok(r - 1)));
    }
    rows.count("c_star_exact_minimality_failures", failures);
    for n in [8usize, 16, 32] {
        let r = c_star_threshold(n);
        let trials = cfg.trials;
        let mut rng = cfg.rng(6, n as u64);
        let hits = (0..trials)
            .filter(|_| sample_uniform_function(n, &mut rng).is_r_non_injective(r))
            .count();
        let target = 1.0 / (2.0 * (n * n) as f64);
        let sigma = (target * (1.0 - target) / trials as f64).sqrt();
        rows.at_most(format!("c_star_monte_carlo_rate_n{n}_r{r}"), hits as f64 / trials as f64, target + 3.0 * sigma);
    }
    rows.rows
}

pub fn reduction_suite(cfg: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows = Rows::new("reduction");
    rows.exact("choose_params_t_n2^20_p1_r10", choose_params(1 << 20, 1, 10).map(|p| p.t).unwrap_or(0), 102);
    rows.exact(
        "choose_params_n10_p2_r4_infeasible",
        matches!(choose_params(10, 2, 4), Err(Error::Infeasible(_))),
        true,
    );

    // completeness: deterministic, so checked at parameters outside the
    // feasible range as well
    let (n, p, t) = (64, 2, 2);
    let r = c_star_threshold(n);
    let mut failures = 0usize;
    for i in 0..cfg.scaled(1000) {
        let mut rng = cfg.rng(10, i as u64);
        let inst = sample_planted_or_lpce(n, p, r, t, &mut rng).unwrap();
        let reduced = reduce_or_lpce_unchecked(&inst, &mut rng);
        failures += usize::from(reduced.instance().map_or(true, |x| !x.eval()));
    }
    rows.count(format!("completeness_failures_n{n}_p{p}_t{t}_r{r}"), failures);

    for (tag, params) in soundness_configs() {
        let trials = cfg.scaled(2000);
        let mut hits = 0usize;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for i in 0..trials {
            let mut rng = cfg.rng(11 + tag, i as u64);
            let inst = sample_zero_or_lpce(params.n, params.p, params.r, params.t, &mut rng).unwrap();
            let reduced = reduce_or_lpce(&inst, &mut rng).unwrap();
            let size = reduced.instance().expect("zero instances have no heavy tables").intersection().len() as f64;
            hits += usize::from(size > 0.0);
            sum += size;
            sum_sq += size * size;
        }
        let label = format!("n{}_p{}_r{}_t{}", params.n, params.p, params.r, params.t);
        rows.at_most(format!("soundness_false_rate_{label}"), hits as f64 / trials as f64, 0.13);
        let mean = sum / trials as f64;
        let sd = ((sum_sq / trials as f64 - mean * mean).max(0.0) / trials as f64).sqrt();
        rows.at_most(format!("soundness_mean_intersection_{label}"), mean, params.intersection_bound() + 3.0 * sd);
    }
    rows.rows
}

/// Feasible parameter sets for the soundness checks.
pub fn soundness_configs() -> Vec<(u64, ReductionParams)> {
    vec![
        (0, choose_params(2000, 1, 2).expect("feasible")),
        (1, ReductionParams::new(320, 2, 2, 2).expect("feasible")),
        (2, choose_params(1024, 1, c_star_threshold(1024)).expect("feasible")),
    ]
}

/// Every set function on `[k]`.
pub fn all_set_functions(k: usize) -> Vec<SetFunctionTable> {
    let subsets = 1usize << k;
    let total = subsets.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let image = (0..k)
                .map(|_| {
                    let mask = code % subsets;
                    code /= subsets;
                    (0..k).filter(|b| mask >> b & 1 == 1).collect::<IndexSet>()
                })
                .collect();
            SetFunctionTable::new(image).expect("in range")
        })
        .collect()
}

/// Every INTERSECT(SC) instance over `[k]` with `layers` tables per side,
/// passed to `visit` one by one.
pub fn for_each_intersect_sc(k: usize, layers: usize, mut visit: impl FnMut(&IntersectScInstance)) {
    let tables = all_set_functions(k);
    let slots = 2 * layers;
    let mut idx = vec![0usize; slots];
    loop {
        let pick = |range: std::ops::Range<usize>| {
            ScInstance::new(range.map(|s| tables[idx[s]].clone()).collect()).expect("shapes agree")
        };
        let inst = IntersectScInstance::new(pick(0..layers), pick(layers..slots)).expect("shapes agree");
        visit(&inst);
        let mut s = 0;
        loop {
            if s == slots {
                return;
            }
            idx[s] += 1;
            if idx[s] < tables.len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

/// Mismatch counters for one gadget family.
#[derive(Default)]
struct GadgetTally {
    instances: usize,
    distance: usize,
    reachability: usize,
    matching: usize,
    short_paths: usize,
    edge_count: usize,
    not_bipartite: usize,
}

impl GadgetTally {
    fn check(&mut self, inst: &IntersectScInstance, b: &GadgetBuilders) {
        self.instances += 1;
        let want = inst.eval();
        let layers = inst.p();
        let d = (b.distance)(inst);
        let dist = oracle_distance(&d);
        self.distance += usize::from(dist.is_some_and(|x| x <= 2 * layers) != want);
        self.short_paths += usize::from(dist.is_some_and(|x| x < 2 * layers));
        let multiplicity: usize = inst.left().funcs().iter().chain(inst.right().funcs()).map(|f| f.multiplicity()).sum();
        self.edge_count += usize::from(d.num_edges() != multiplicity);
        self.reachability += usize::from(oracle_reachable(&(b.reachability)(inst)) != want);
        let m = (b.matching)(inst);
        match oracle_perfect_matching(&m) {
            Ok(pm) => self.matching += usize::from(pm != want),
            Err(_) => self.not_bipartite += 1,
        }
    }

    fn report(&self, rows: &mut Rows, label: &str) {
        rows.push(format!("{label}_instances"), self.instances, ">=1", self.instances >= 1);
        rows.count(format!("{label}_distance_mismatches"), self.distance);
        rows.count(format!("{label}_reachability_mismatches"), self.reachability);
        rows.count(format!("{label}_matching_mismatches"), self.matching);
        rows.count(format!("{label}_paths_shorter_than_2P"), self.short_paths);
        rows.count(format!("{label}_edge_count_mismatches"), self.edge_count);
        rows.count(format!("{label}_non_bipartite_matching_gadgets"), self.not_bipartite);
    }
}

pub fn gadgets_suite(cfg: &VerifyConfig, builders: &GadgetBuilders) -> Vec<CheckRow> {
    let mut rows = Rows::new("gadgets");
    let mut counts_ok = 0usize;
    let mut counts_bad = 0usize;
    for p in 1..=3 {
        for k in [2usize, 4, 8] {
            let inst = IntersectScInstance::identity(k, p + 1);
            let ok = (builders.distance)(&inst).num_vertices() == (2 * p + 3) * k
                && (builders.reachability)(&inst).num_vertices() == (2 * p + 3) * k
                && (builders.matching)(&inst).num_vertices() == k * (4 * p + 6) - 2;
            if ok {
                counts_ok += 1;
            } else {
                counts_bad += 1;
            }
        }
    }
    rows.count("vertex_count_mismatches_p1-3_k2-4-8", counts_bad);
    rows.exact("vertex_count_cases", counts_ok + counts_bad, 9);

    let mut exhaustive = GadgetTally::default();
    for k in 1..=2 {
        for_each_intersect_sc(k, 2, |inst| exhaustive.check(inst, builders));
    }
    for k in 1..=3 {
        for_each_intersect_sc(k, 1, |inst| exhaustive.check(inst, builders));
    }
    exhaustive.report(&mut rows, "exhaustive");

    let mut random = GadgetTally::default();
    for i in 0..cfg.scaled(1000) {
        let mut rng = cfg.rng(20, i as u64);
        let k = rng.gen_range(1..=16);
        let p = rng.gen_range(1..=3);
        let max_out = rng.gen_range(1..=3);
        random.check(&sample_uniform_intersect_sc(k, p + 1, max_out, &mut rng), builders);
        let small = sample_uniform_intersect_sc(3, 2, 3, &mut rng);
        random.check(&small, builders);
    }
    random.report(&mut rows, "random");

    let mut order_changes = 0usize;
    for i in 0..cfg.scaled(200) {
        let mut rng = cfg.rng(21, i as u64);
        let inst = sample_uniform_intersect_sc(6, 3, 2, &mut rng);
        let d = (builders.distance)(&inst);
        let r = (builders.reachability)(&inst);
        let m = (builders.matching)(&inst);
        order_changes += usize::from(oracle_distance(&d) != oracle_distance(&d.reversed()))
            + usize::from(oracle_reachable(&r) != oracle_reachable(&r.reversed()))
            + usize::from(oracle_perfect_matching(&m) != oracle_perfect_matching(&m.reversed()));
        order_changes += usize::from(two_coloring(&m).is_err());
    }
    rows.count("reversal_changes_oracle_answer", order_changes);
    rows.rows
}

pub fn protocols_suite(cfg: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows = Rows::new("protocols");
    let n = 16;
    let (mut wrong, mut bad_rounds, mut bad_bits, mut bad_reverse) = (0usize, 0usize, 0usize, 0usize);
    let mut yes = 0usize;
    let trials = cfg.scaled(10_000);
    for i in 0..trials {
        let mut rng = cfg.rng(30, i as u64);
        let p = rng.gen_range(1..=3);
        let max_out = rng.gen_range(1..=4);
        let inst = sample_uniform_intersect_sc(n, p, max_out, &mut rng);
        let want = inst.eval();
        yes += usize::from(want);
        let (fa, ft) = forward_sc_protocol(&inst);
        let (ra, rt) = reverse_order_sc_protocol(&inst);
        wrong += usize::from(fa != want) + usize::from(ra != want);
        bad_rounds += usize::from(ft.rounds_used() != p);
        let set_bits: usize = ft.messages().iter().filter(|m| m.bits.len() == n).map(|m| m.bits.len()).sum();
        bad_bits += usize::from(set_bits != 2 * p * n);
        bad_reverse += usize::from(rt.rounds_used() != 1 || rt.total_bits() != 2 * p * n);
    }
    rows.count(format!("answer_mismatches_n{n}"), wrong);
    rows.count("forward_round_mismatches", bad_rounds);
    rows.count("forward_set_bits_mismatches", bad_bits);
    rows.count("reverse_round_or_bits_mismatches", bad_reverse);
    rows.push("yes_fraction", format!("{:.6}", yes as f64 / trials as f64), "in(0,1)", yes > 0 && yes < trials);

    let mut wrong = 0usize;
    let mut instances = 0usize;
    let mut visit = |inst: &IntersectScInstance| {
        instances += 1;
        let want = inst.eval();
        wrong += usize::from(forward_sc_protocol(inst).0 != want) + usize::from(reverse_order_sc_protocol(inst).0 != want);
    };
    for k in 1..=2 {
        for layers in 1..=2 {
            for_each_intersect_sc(k, layers, &mut visit);
        }
    }
    for_each_intersect_sc(3, 1, &mut visit);
    rows.count("exhaustive_answer_mismatches", wrong);
    // (2^k)^k tables on [k], 2 * layers tables per instance
    rows.exact("exhaustive_instances", instances, 2usize.pow(2) + 2usize.pow(4) + 16usize.pow(2) + 16usize.pow(4) + 512usize.pow(2));
    rows.rows
}

pub fn streaming_suite(cfg: &VerifyConfig) -> Vec<CheckRow> {
    let mut rows = Rows::new("streaming");
    for p in 1..=3 {
        let d = 2 * p + 2;
        let g = build_distance_gadget(&IntersectScInstance::identity(4, p + 1));
        let bi = run_streaming(&mut BidirectionalBfs::new(d), &g, d).unwrap();
        rows.exact(format!("bidir_bfs_passes_identity_p{p}"), bi.passes_used, p + 1);
        let fw = run_streaming(&mut ForwardBfs::new(d), &g, 10 * d).unwrap();
        rows.exact(format!("forward_bfs_passes_gadget_order_p{p}"), fw.passes_used, p + 1);
        let rev = run_streaming(&mut ForwardBfs::new(d), &g.reversed(), 10 * d).unwrap();
        rows.exact(format!("forward_bfs_passes_reversed_order_p{p}"), rev.passes_used, p + 2);
        let reach = build_reachability_gadget(&IntersectScInstance::identity(4, p + 1));
        let df = run_streaming(&mut DirectedFrontier::new(), &reach, 10 * d).unwrap();
        rows.exact(format!("directed_frontier_passes_identity_p{p}"), df.passes_used, p + 1);
    }
    for n in [16usize, 64, 256] {
        let edges: Vec<_> = (1..n).rev().map(|i| (i - 1, i)).collect();
        let g = GraphStream::new(false, n, edges, 0, n - 1, 0).unwrap();
        let uf = run_streaming(&mut UnionFind::new(), &g, 1).unwrap();
        rows.exact(format!("union_find_passes_n{n}"), uf.passes_used, 1);
        let log = (usize::BITS - (n - 1).leading_zeros()) as usize;
        rows.push(
            format!("union_find_state_bits_n{n}"),
            uf.max_state_bits,
            format!("<={}", n * log),
            uf.max_state_bits <= n * log && uf.answer == Some(true),
        );
    }

    let (mut mismatches, mut bidir_passes) = (0usize, 0usize);
    for i in 0..cfg.scaled(1000) {
        let mut rng = cfg.rng(40, i as u64);
        let k = rng.gen_range(1..=8);
        let layers = rng.gen_range(2..=4);
        let inst = sample_uniform_intersect_sc(k, layers, 2, &mut rng);
        let want = inst.eval();
        let d = 2 * layers;
        let dist = build_distance_gadget(&inst);
        for g in [dist.clone(), dist.reversed()] {
            let bi = run_streaming(&mut BidirectionalBfs::new(d), &g, d).unwrap();
            mismatches += usize::from(bi.answer != Some(want));
            bidir_passes += usize::from(want && bi.passes_used != layers);
            let fw = run_streaming(&mut ForwardBfs::new(d), &g, 10 * d).unwrap();
            mismatches += usize::from(fw.answer != Some(want));
            let uf = run_streaming(&mut UnionFind::new(), &g, 1).unwrap();
            mismatches += usize::from(uf.answer != Some(oracle_reachable(&g)));
        }
        let reach = build_reachability_gadget(&inst);
        for g in [reach.clone(), reach.reversed()] {
            let df = run_streaming(&mut DirectedFrontier::new(), &g, 10 * d).unwrap();
            mismatches += usize::from(df.answer != Some(want));
        }
    }
    rows.count("algorithm_oracle_mismatches", mismatches);
    rows.count("bidir_bfs_passes_not_ceil_half_bound", bidir_passes);
    rows.rows
}
