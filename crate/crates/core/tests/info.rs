use chasebench::info::{
    c_star_threshold, collision_bounds_check, deficit_distribution, entropy, good_set, kl_divergence,
    mixture_entropy_check, mutual_information, non_injective_probability_exact, rejection_sample,
    union_bound_certifies, FiniteDistribution, JointDistribution, RejectionSampler, COLLISION_DELTA,
};
use chasebench::seed::trial_rng;
use num_bigint::BigUint;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

#[test]
fn basic_quantities() {
    assert!(close(entropy(&FiniteDistribution::uniform(8)), 3.0));
    assert!(close(entropy(&FiniteDistribution::point(5, 2)), 0.0));
    let p = FiniteDistribution::new(vec![0.5, 0.5]).unwrap();
    let q = FiniteDistribution::new(vec![0.25, 0.75]).unwrap();
    let want = 0.5 * (2.0f64).log2() + 0.5 * (2.0f64 / 3.0).log2();
    assert!(close(kl_divergence(&p, &q).unwrap(), want));
    assert!(kl_divergence(&p, &FiniteDistribution::point(2, 0)).unwrap().is_infinite());
    let copy = JointDistribution::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).unwrap();
    assert!(close(mutual_information(&copy), 1.0));
    let ind = JointDistribution::independent(&p, &q);
    assert!(mutual_information(&ind).abs() < 1e-12);
}

#[test]
fn invalid_distributions() {
    assert!(FiniteDistribution::new(vec![]).is_err());
    assert!(FiniteDistribution::new(vec![0.5, 0.6]).is_err());
    assert!(FiniteDistribution::new(vec![1.5, -0.5]).is_err());
    assert!(FiniteDistribution::new(vec![f64::NAN, 1.0]).is_err());
}

#[test]
fn collision_bounds_on_deficit_pairs() {
    for n in [4usize, 16, 64] {
        let x = deficit_distribution(n, 1, COLLISION_DELTA).unwrap();
        assert!(((n as f64).log2() - x.entropy() - COLLISION_DELTA).abs() < 1e-9);
        let report = collision_bounds_check(&x, &FiniteDistribution::uniform(n)).unwrap();
        assert!(report.holds());
        // a uniform partner collides with probability exactly 1/n
        assert!(close(report.pr_equal, 1.0 / n as f64));
    }
    let far = deficit_distribution(16, 1, 0.5).unwrap();
    assert!(collision_bounds_check(&far, &far).is_err());
}

#[test]
fn mixture_of_disjoint_supports_is_tight() {
    let x0 = FiniteDistribution::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap();
    let x1 = FiniteDistribution::new(vec![0.0, 0.0, 0.5, 0.5]).unwrap();
    let r = mixture_entropy_check(&x0, &x1, &FiniteDistribution::uniform(2)).unwrap();
    assert!(close(r.mixture_entropy, r.bound));
    assert!(r.holds);
}

#[test]
fn rejection_with_equal_laws() {
    let p = FiniteDistribution::uniform(4);
    let good = good_set(&p, &p, 0.5).unwrap();
    assert_eq!(good.members, [0, 1, 2, 3]);
    assert!(close(good.scale, 0.25));
    let sampler = RejectionSampler::new(&p, &p, 0.5).unwrap();
    assert_eq!(sampler.stop_probability(), 0.0);
    let mut rng = trial_rng(41, 0);
    let draws = 20_000;
    let mut steps = 0u64;
    for _ in 0..draws {
        let out = rejection_sample(&p, &p, 0.5, &mut rng).unwrap();
        assert!(out.value.is_some());
        assert_eq!(out.r(), out.steps);
        steps += out.steps;
    }
    let mean = steps as f64 / draws as f64;
    // geometric with success 1/4: mean 4, sd sqrt(12)
    assert!((mean - 4.0).abs() < 5.0 * (12.0f64 / draws as f64).sqrt(), "{mean}");
    assert!(good_set(&p, &p, 1.0).is_err());
}

#[test]
fn c_star_small_values() {
    // n = 2: 2 of 4 functions are 2-non-injective, 1/2 > 1/8
    assert_eq!(non_injective_probability_exact(2, 2), (BigUint::from(2u32), BigUint::from(4u32)));
    assert_eq!(c_star_threshold(1), 2);
    assert_eq!(c_star_threshold(2), 3);
    assert_eq!(c_star_threshold(64), 9);
    assert!(union_bound_certifies(1024, c_star_threshold(1024)));
    assert!(!union_bound_certifies(1024, c_star_threshold(1024) - 1));
    let mut prev = 0;
    for n in 1..=40 {
        let r = c_star_threshold(n);
        assert!(r >= 2 && r <= n + 1);
        prev = prev.max(r);
    }
    assert!(prev <= 9);
}
