//! Layered graphs encoding INTERSECT(SC) as bounded distance, directed
//! reachability and perfect matching, written out as ordered edge streams.
//!
//! An instance with `P` layers per side over `[k]` gives columns `0..=2P` of
//! `k` vertices each. The left table `funcs[P-1-c]` connects column `c` to
//! `c+1` (the innermost table touches `u = (0, 0)`); the right table
//! `funcs[P-1-c]` connects column `2P-c` to `2P-c-1` (the innermost touches
//! `v = (2P, 0)`). The middle column `P` is shared. The stream lists the
//! tables in speaking order: left outermost first, then toward `u`, then the
//! right side from the middle out to `v`.

mod text;

pub use text::{parse_stream, serialize_stream};

use crate::chasing::{IntersectScInstance, ScInstance};
use crate::{Error, Result};

/// An edge stream with metadata. Edge order is part of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStream {
    directed: bool,
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    source: usize,
    target: usize,
    passes_hint: usize,
}

impl GraphStream {
    pub fn new(
        directed: bool,
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        source: usize,
        target: usize,
        passes_hint: usize,
    ) -> Result<Self> {
        if source >= num_vertices || target >= num_vertices {
            return Err(Error::domain(format!(
                "src={source} and dst={target} must be below nv={num_vertices}"
            )));
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= num_vertices || b >= num_vertices {
                return Err(Error::domain(format!("edge {i} = ({a}, {b}) leaves [0, {num_vertices})")));
            }
            if a == b {
                return Err(Error::domain(format!("edge {i} is a self-loop at {a}")));
            }
        }
        Ok(Self {
            directed,
            num_vertices,
            edges,
            source,
            target,
            passes_hint,
        })
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// The `p` the gadget was built for (`P - 1` layers per side).
    pub fn passes_hint(&self) -> usize {
        self.passes_hint
    }

    /// Same graph, edges in the opposite order.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.edges.reverse();
        out
    }

    /// Out-neighbours; both directions when undirected.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if !self.directed {
                adj[b].push(a);
            }
        }
        adj
    }
}

/// Proper 2-coloring of the underlying undirected graph, if one exists.
pub fn two_coloring(g: &GraphStream) -> Result<Vec<bool>> {
    let mut adj = vec![Vec::new(); g.num_vertices()];
    for &(a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; g.num_vertices()];
    let mut stack = Vec::new();
    for start in 0..g.num_vertices() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        stack.push(start);
        while let Some(x) = stack.pop() {
            let c = color[x].unwrap();
            for &y in &adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(!c);
                        stack.push(y);
                    }
                    Some(d) if d == c => return Err(Error::NotBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(Option::unwrap).collect())
}

/// Vertex numbering of a gadget.
///
/// Layered gadgets use `id = column * k + slot`. The matching gadget splits
/// each internal column `c` into an in-copy (sub-column `2c - 1`) and an
/// out-copy (sub-column `2c`); column `2P` becomes sub-column `4P - 1`; the
/// `2(k - 1)` pendant vertices follow, first those of column `0` then those
/// of column `2P`, by slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetLayout {
    pub k: usize,
    /// Layers per side.
    pub layers: usize,
    pub split: bool,
}

impl GadgetLayout {
    pub fn layered(k: usize, layers: usize) -> Self {
        Self { k, layers, split: false }
    }

    pub fn split(k: usize, layers: usize) -> Self {
        Self { k, layers, split: true }
    }

    /// `2P + 1` columns.
    pub fn columns(&self) -> usize {
        2 * self.layers + 1
    }

    fn main_vertices(&self) -> usize {
        if self.split {
            4 * self.layers * self.k
        } else {
            self.columns() * self.k
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.main_vertices() + if self.split { 2 * (self.k - 1) } else { 0 }
    }

    /// Where layer edges enter `(column, slot)`.
    pub fn entry(&self, column: usize, slot: usize) -> usize {
        assert!(column < self.columns() && slot < self.k);
        if !self.split || column == 0 {
            return column * self.k + slot;
        }
        if column == 2 * self.layers {
            return (4 * self.layers - 1) * self.k + slot;
        }
        (2 * column - 1) * self.k + slot
    }

    /// Where layer edges leave `(column, slot)`.
    pub fn exit(&self, column: usize, slot: usize) -> usize {
        if self.split && column > 0 && column < 2 * self.layers {
            2 * column * self.k + slot
        } else {
            self.entry(column, slot)
        }
    }

    /// Pendant partner of `(0, slot)` (`far = false`) or `(2P, slot)`,
    /// for `slot >= 1`.
    pub fn pendant(&self, far: bool, slot: usize) -> usize {
        assert!(self.split && slot >= 1 && slot < self.k);
        self.main_vertices() + usize::from(far) * (self.k - 1) + slot - 1
    }

    pub fn u(&self) -> usize {
        self.entry(0, 0)
    }

    pub fn v(&self) -> usize {
        self.entry(2 * self.layers, 0)
    }
}

/// `(lower column, slot) - (higher column, slot)` pairs per player, in
/// speaking order.
fn player_blocks(inst: &IntersectScInstance) -> Vec<Vec<((usize, usize), (usize, usize))>> {
    let layers = inst.p();
    let mut blocks = Vec::with_capacity(2 * layers);
    let side = |sc: &ScInstance, i: usize, left: bool| {
        let f = &sc.funcs()[i];
        // layer index c counts from the outer end (u or v)
        let c = layers - 1 - i;
        let mut block = Vec::with_capacity(f.multiplicity());
        for x in 0..f.n() {
            for &y in f.get(x) {
                block.push(if left {
                    ((c, x), (c + 1, y))
                } else {
                    ((2 * layers - c - 1, y), (2 * layers - c, x))
                });
            }
        }
        block
    };
    for i in 0..layers {
        blocks.push(side(inst.left(), i, true));
    }
    for i in 0..layers {
        blocks.push(side(inst.right(), i, false));
    }
    blocks
}

fn layered(inst: &IntersectScInstance, directed: bool) -> GraphStream {
    let layers = inst.p();
    let layout = GadgetLayout::layered(inst.n(), layers);
    let mut edges = Vec::new();
    for block in player_blocks(inst) {
        let mut ids: Vec<_> = block
            .into_iter()
            .map(|((c0, s0), (c1, s1))| (layout.exit(c0, s0), layout.entry(c1, s1)))
            .collect();
        ids.sort_unstable();
        edges.extend(ids);
    }
    GraphStream::new(directed, layout.num_vertices(), edges, layout.u(), layout.v(), layers - 1)
        .expect("gadget ids are in range")
}

/// Undirected; `dist(u, v) <= 2P` iff the final sets intersect, and every
/// `u`-`v` path has length at least `2P`.
pub fn build_distance_gadget(inst: &IntersectScInstance) -> GraphStream {
    layered(inst, false)
}

/// As the distance gadget with every edge pointing to the higher column;
/// `v` is reachable from `u` iff the final sets intersect.
pub fn build_reachability_gadget(inst: &IntersectScInstance) -> GraphStream {
    layered(inst, true)
}

/// Internal columns split into in/out copies joined by matching edges, and
/// pendant partners for every end-column vertex other than `u` and `v`.
/// Those added edges form a matching missing exactly `u` and `v`, so a
/// perfect matching exists iff there is an augmenting `u`-`v` path, iff the
/// final sets intersect. Matching edges come first in the stream.
pub fn build_matching_gadget(inst: &IntersectScInstance) -> GraphStream {
    let layers = inst.p();
    let k = inst.n();
    let layout = GadgetLayout::split(k, layers);
    let mut matching = Vec::new();
    for slot in 1..k {
        matching.push((layout.entry(0, slot), layout.pendant(false, slot)));
        matching.push((layout.entry(2 * layers, slot), layout.pendant(true, slot)));
    }
    for c in 1..2 * layers {
        for slot in 0..k {
            matching.push((layout.entry(c, slot), layout.exit(c, slot)));
        }
    }
    matching.sort_unstable();
    let mut edges = matching;
    for block in player_blocks(inst) {
        let mut ids: Vec<_> = block
            .into_iter()
            .map(|((c0, s0), (c1, s1))| (layout.exit(c0, s0), layout.entry(c1, s1)))
            .collect();
        ids.sort_unstable();
        edges.extend(ids);
    }
    let g = GraphStream::new(false, layout.num_vertices(), edges, layout.u(), layout.v(), layers - 1)
        .expect("gadget ids are in range");
    two_coloring(&g).expect("matching gadget must be bipartite");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chasing::{sample_uniform_intersect_sc, SetFunctionTable};
    use crate::seed::trial_rng;
    use std::collections::VecDeque;

    fn bfs(g: &GraphStream) -> Option<usize> {
        let adj = g.adjacency();
        let mut dist = vec![usize::MAX; g.num_vertices()];
        dist[g.source()] = 0;
        let mut queue = VecDeque::from([g.source()]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        (dist[g.target()] != usize::MAX).then(|| dist[g.target()])
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
        assert_eq!(build_distance_gadget(&IntersectScInstance::identity(4, 2)).num_vertices(), 20);
        assert_eq!(build_matching_gadget(&IntersectScInstance::identity(4, 2)).num_vertices(), 38);
    }

    #[test]
    fn layouts_are_bijections() {
        for (k, layers) in [(1, 1), (3, 2), (4, 3)] {
            for layout in [GadgetLayout::layered(k, layers), GadgetLayout::split(k, layers)] {
                let mut seen = vec![false; layout.num_vertices()];
                for c in 0..layout.columns() {
                    for s in 0..k {
                        let mut ids = vec![layout.entry(c, s)];
                        if layout.exit(c, s) != ids[0] {
                            ids.push(layout.exit(c, s));
                        }
                        if layout.split && s > 0 && (c == 0 || c == layout.columns() - 1) {
                            ids.push(layout.pendant(c != 0, s));
                        }
                        for id in ids {
                            assert!(!std::mem::replace(&mut seen[id], true));
                        }
                    }
                }
                assert!(seen.iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn identity_gadget_is_a_straight_path() {
        let inst = IntersectScInstance::identity(4, 2);
        let g = build_distance_gadget(&inst);
        assert_eq!(g.num_edges(), 16);
        assert_eq!(bfs(&g), Some(4));
        // P_1 is the left outermost table, columns 1-2
        assert_eq!(&g.edges()[..4], &[(4, 8), (5, 9), (6, 10), (7, 11)]);
        assert_eq!(&g.edges()[4..8], &[(0, 4), (1, 5), (2, 6), (3, 7)]);
        assert_eq!(&g.edges()[8..12], &[(8, 12), (9, 13), (10, 14), (11, 15)]);
        assert_eq!(&g.edges()[12..], &[(12, 16), (13, 17), (14, 18), (15, 19)]);
        assert_eq!((g.source(), g.target(), g.passes_hint()), (0, 16, 1));
    }

    #[test]
    fn empty_sets_disconnect() {
        let empty = SetFunctionTable::new(vec![Default::default(); 3]).unwrap();
        let side = ScInstance::new(vec![empty.clone(), SetFunctionTable::identity(3)]).unwrap();
        let inst = IntersectScInstance::new(side, ScInstance::identity(3, 2)).unwrap();
        assert!(!inst.eval());
        assert_eq!(bfs(&build_distance_gadget(&inst)), None);
    }

    #[test]
    fn edge_count_is_total_multiplicity_and_distance_is_at_least_2p() {
        for i in 0..300 {
            let mut rng = trial_rng(40, i);
            let inst = sample_uniform_intersect_sc(5, 2, 3, &mut rng);
            let g = build_distance_gadget(&inst);
            let total: usize = inst.left().funcs().iter().chain(inst.right().funcs()).map(|f| f.multiplicity()).sum();
            assert_eq!(g.num_edges(), total);
            let d = bfs(&g);
            assert!(d.map_or(true, |d| d >= 4));
            assert_eq!(d.map_or(false, |d| d <= 4), inst.eval());
            let m = build_matching_gadget(&inst);
            // pendant edges 2(k-1), split edges (2P-1)k
            assert_eq!(m.num_edges(), total + 2 * 4 + 3 * 5);
        }
    }

    #[test]
    fn reachability_edges_point_forward() {
        let mut rng = trial_rng(41, 0);
        let inst = sample_uniform_intersect_sc(6, 3, 6, &mut rng);
        let g = build_reachability_gadget(&inst);
        assert!(g.directed());
        assert!(g.edges().iter().all(|&(a, b)| a / 6 + 1 == b / 6));
    }

    #[test]
    fn matching_gadget_matching_covers_all_but_u_and_v() {
        let inst = IntersectScInstance::identity(3, 2);
        let g = build_matching_gadget(&inst);
        let m = 2 * (3 - 1) + 3 * 3;
        let mut covered = vec![0; g.num_vertices()];
        for &(a, b) in &g.edges()[..m] {
            covered[a] += 1;
            covered[b] += 1;
        }
        for (x, &c) in covered.iter().enumerate() {
            assert_eq!(c, usize::from(x != g.source() && x != g.target()));
        }
        assert!(two_coloring(&g).is_ok());
    }

    #[test]
    fn two_coloring_detects_odd_cycles() {
        let tri = GraphStream::new(false, 3, vec![(0, 1), (1, 2), (2, 0)], 0, 2, 0).unwrap();
        assert_eq!(two_coloring(&tri), Err(Error::NotBipartite));
        assert!(GraphStream::new(false, 2, vec![(1, 1)], 0, 1, 0).is_err());
        assert!(GraphStream::new(false, 2, vec![(0, 2)], 0, 1, 0).is_err());
    }
}
