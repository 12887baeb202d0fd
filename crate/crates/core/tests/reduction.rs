use chasebench::chasing::{
    sample_uniform_or_lpce, FunctionTable, LpceInstance, OrLpceInstance, PcInstance,
};
use chasebench::protocol::{forward_sc_protocol, reverse_order_sc_protocol};
use chasebench::reduction::{
    choose_params, end_to_end_solve, is_feasible, reduce_or_lpce, reduce_or_lpce_unchecked, sample_planted_or_lpce,
    sample_zero_or_lpce, scramble_and_overlay, PermutationFamily, Reduction, ReductionParams,
};
use chasebench::seed::trial_rng;
use chasebench::Error;

fn perm(image: &[usize]) -> FunctionTable {
    FunctionTable::new(image.to_vec()).unwrap()
}

#[test]
fn feasibility_boundary() {
    // 10 * 2^4 * 2 = 320
    assert!(is_feasible(320, 2, 2, 2));
    assert!(!is_feasible(319, 2, 2, 2));
    assert!(matches!(ReductionParams::new(64, 2, 9, 2), Err(Error::Infeasible(_))));
    let params = choose_params(2000, 1, 2).unwrap();
    assert_eq!(params.t, 10);
    assert!(!is_feasible(2000, 1, 2, 15));
}

#[test]
fn identity_permutations_overlay_the_items() {
    let a = PcInstance::new(vec![perm(&[1, 2, 0]), perm(&[2, 0, 1])]).unwrap();
    let b = PcInstance::new(vec![perm(&[0, 2, 1]), perm(&[1, 0, 2])]).unwrap();
    let item = LpceInstance::new(a.clone(), b.clone(), 3).unwrap();
    let inst = OrLpceInstance::new(vec![item.clone(), item]).unwrap();
    let reduced = scramble_and_overlay(&inst, &PermutationFamily::identity(3, 2, 2));
    assert_eq!(reduced.left().eval(), [a.eval()].into_iter().collect());
    assert_eq!(reduced.right().eval(), [b.eval()].into_iter().collect());
    assert_eq!(reduced.eval(), a.eval() == b.eval());
}

#[test]
fn completeness_on_planted_instances() {
    for i in 0..200 {
        let mut rng = trial_rng(21, i);
        let inst = sample_planted_or_lpce(32, 3, 6, 3, &mut rng).unwrap();
        assert!(inst.eval() && !inst.has_non_injective());
        let reduced = reduce_or_lpce_unchecked(&inst, &mut rng);
        assert!(reduced.instance().unwrap().eval(), "trial {i}");
    }
}

#[test]
fn non_injective_tables_short_circuit() {
    let mut rng = trial_rng(22, 0);
    let inst = sample_uniform_or_lpce(2000, 1, 2, 10, &mut rng);
    assert!(inst.has_non_injective());
    assert!(matches!(reduce_or_lpce(&inst, &mut rng).unwrap(), Reduction::ShortCircuit { .. }));
    let e2e = end_to_end_solve(&inst, forward_sc_protocol, &mut rng).unwrap();
    assert!(e2e.answer && e2e.short_circuit);
    assert_eq!(e2e.total_bits, 2);
}

#[test]
fn end_to_end_bits_add_the_pre_round() {
    let mut rng = trial_rng(23, 0);
    let inst = sample_zero_or_lpce(320, 2, 2, 2, &mut rng).unwrap();
    let e2e = end_to_end_solve(&inst, reverse_order_sc_protocol, &mut rng).unwrap();
    assert!(!e2e.short_circuit);
    assert_eq!(e2e.total_bits, 2 * 2 + 2 * 2 * 320);
}

#[test]
fn zero_instances_rarely_intersect() {
    let params = choose_params(2000, 1, 2).unwrap();
    let mut hits = 0;
    for i in 0..400 {
        let mut rng = trial_rng(24, i);
        let inst = sample_zero_or_lpce(params.n, params.p, params.r, params.t, &mut rng).unwrap();
        assert!(!inst.eval());
        hits += usize::from(reduce_or_lpce(&inst, &mut rng).unwrap().instance().unwrap().eval());
    }
    // expected about 0.05
    assert!(hits <= 40, "{hits}");
}

#[test]
fn reduction_is_deterministic_per_seed() {
    let inst = sample_zero_or_lpce(320, 2, 2, 2, &mut trial_rng(25, 0)).unwrap();
    let a = reduce_or_lpce(&inst, &mut trial_rng(25, 1)).unwrap();
    let b = reduce_or_lpce(&inst, &mut trial_rng(25, 1)).unwrap();
    assert_eq!(a, b);
}
