use chasebench::chasing::{sample_uniform_intersect_sc, IndexSet, IntersectScInstance, ScInstance, SetFunctionTable};
use chasebench::gadgets::{
    build_distance_gadget, build_matching_gadget, build_reachability_gadget, parse_stream, serialize_stream,
    two_coloring, GadgetLayout, GraphStream,
};
use chasebench::seed::trial_rng;
use chasebench::streaming::{maximum_matching_size, oracle_distance, oracle_perfect_matching, oracle_reachable};
use chasebench::Error;

fn set(xs: &[usize]) -> IndexSet {
    xs.iter().copied().collect()
}

fn disjoint() -> IntersectScInstance {
    let to = |y: usize| SetFunctionTable::new(vec![set(&[y]), set(&[y])]).unwrap();
    IntersectScInstance::new(ScInstance::new(vec![to(0)]).unwrap(), ScInstance::new(vec![to(1)]).unwrap()).unwrap()
}

#[test]
fn vertex_counts() {
    for p in 1..=3 {
        for k in [2, 4, 8] {
            let inst = IntersectScInstance::identity(k, p + 1);
            assert_eq!(build_distance_gadget(&inst).num_vertices(), (2 * p + 3) * k);
            assert_eq!(build_reachability_gadget(&inst).num_vertices(), (2 * p + 3) * k);
            assert_eq!(build_matching_gadget(&inst).num_vertices(), k * (4 * p + 6) - 2);
        }
    }
}

#[test]
fn all_three_gadgets_agree_with_eval() {
    for i in 0..300 {
        let mut rng = trial_rng(5, i);
        let k = 1 + (i as usize % 7);
        let layers = 2 + (i as usize % 3);
        let inst = sample_uniform_intersect_sc(k, layers, 2, &mut rng);
        let want = inst.eval();
        let d = build_distance_gadget(&inst);
        assert_eq!(oracle_distance(&d).is_some_and(|x| x <= 2 * layers), want, "trial {i}");
        assert_eq!(oracle_reachable(&build_reachability_gadget(&inst)), want, "trial {i}");
        assert_eq!(oracle_perfect_matching(&build_matching_gadget(&inst)).unwrap(), want, "trial {i}");
    }
}

#[test]
fn no_instances_leave_exactly_two_vertices_exposed() {
    let mut seen = 0;
    for i in 0..300 {
        let inst = sample_uniform_intersect_sc(4, 2, 2, &mut trial_rng(6, i));
        if inst.eval() {
            continue;
        }
        seen += 1;
        let g = build_matching_gadget(&inst);
        assert_eq!(maximum_matching_size(&g).unwrap() * 2 + 2, g.num_vertices());
    }
    assert!(seen > 10);
    let g = build_matching_gadget(&disjoint());
    assert_eq!(maximum_matching_size(&g).unwrap() * 2 + 2, g.num_vertices());
}

#[test]
fn disjoint_sets_disconnect_the_ends() {
    let inst = disjoint();
    assert!(!inst.eval());
    assert_eq!(oracle_distance(&build_distance_gadget(&inst)), None);
    assert!(!oracle_reachable(&build_reachability_gadget(&inst)));
}

#[test]
fn identity_distance_is_exactly_two_layers_per_side() {
    for layers in 1..=4 {
        let g = build_distance_gadget(&IntersectScInstance::identity(3, layers));
        assert_eq!(oracle_distance(&g), Some(2 * layers));
        assert_eq!(g.passes_hint(), layers - 1);
    }
}

#[test]
fn matching_gadget_is_bipartite_with_matching_prefix() {
    let inst = sample_uniform_intersect_sc(5, 3, 3, &mut trial_rng(8, 0));
    let g = build_matching_gadget(&inst);
    assert!(two_coloring(&g).is_ok());
    let layout = GadgetLayout::split(5, 3);
    assert_eq!(layout.num_vertices(), g.num_vertices());
    assert_eq!((g.source(), g.target()), (layout.u(), layout.v()));
}

#[test]
fn reversal_keeps_edges_and_answers() {
    let inst = sample_uniform_intersect_sc(6, 3, 2, &mut trial_rng(9, 0));
    let g = build_distance_gadget(&inst);
    let r = g.reversed();
    let mut a = g.edges().to_vec();
    let mut b = r.edges().to_vec();
    assert_eq!(a.first(), b.last());
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
    assert_eq!(oracle_distance(&g), oracle_distance(&r));
}

#[test]
fn text_round_trip_for_every_gadget() {
    let inst = sample_uniform_intersect_sc(4, 2, 2, &mut trial_rng(10, 0));
    for g in [build_distance_gadget(&inst), build_reachability_gadget(&inst), build_matching_gadget(&inst)] {
        let text = serialize_stream(&g);
        assert!(text.starts_with("graphstream v1 "));
        assert_eq!(parse_stream(&text).unwrap(), g);
    }
}

#[test]
fn malformed_streams_are_rejected() {
    assert!(matches!(GraphStream::new(false, 3, vec![(1, 1)], 0, 2, 0), Err(Error::Domain(_))));
    assert!(GraphStream::new(false, 3, vec![(0, 3)], 0, 2, 0).is_err());
    assert!(GraphStream::new(false, 3, vec![], 0, 3, 0).is_err());
    for bad in [
        "",
        "graphstream v2 undirected nv=2 ne=0 src=0 dst=1 p=0\n",
        "graphstream v1 undirected nv=2 ne=2 src=0 dst=1 p=0\n0 1\n",
        "graphstream v1 sideways nv=2 ne=0 src=0 dst=1 p=0\n",
        "graphstream v1 undirected nv=2 ne=1 src=0 dst=1 p=0\n0 x\n",
    ] {
        assert!(matches!(parse_stream(bad), Err(Error::Parse { .. })), "{bad:?}");
    }
}

#[test]
fn triangle_is_not_bipartite() {
    let g = GraphStream::new(false, 3, vec![(0, 1), (1, 2), (0, 2)], 0, 2, 0).unwrap();
    assert!(matches!(two_coloring(&g), Err(Error::NotBipartite)));
    assert!(matches!(oracle_perfect_matching(&g), Err(Error::NotBipartite)));
}
