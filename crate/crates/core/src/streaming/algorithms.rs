//! Baseline streaming algorithms.

use super::{width_for, StateReader, StateWriter, Step, StreamMeta, StreamingAlgorithm};
use crate::{Error, Result};

/// Names accepted by [`algorithm_by_name`].
pub const ALGORITHMS: [&str; 4] = ["bidir-bfs", "forward-bfs", "union-find", "directed-frontier"];

/// `bound` is the distance threshold for the two BFS variants and is
/// ignored by the others.
pub fn algorithm_by_name(name: &str, bound: usize) -> Result<Box<dyn StreamingAlgorithm>> {
    Ok(match name {
        "bidir-bfs" => Box::new(BidirectionalBfs::new(bound)),
        "forward-bfs" => Box::new(ForwardBfs::new(bound)),
        "union-find" => Box::new(UnionFind::new()),
        "directed-frontier" => Box::new(DirectedFrontier::new()),
        other => {
            return Err(Error::domain(format!(
                "unknown algorithm {other:?}; expected one of {}",
                ALGORITHMS.join(", ")
            )))
        }
    })
}

/// Level-synchronous BFS from both ends, one level per side per pass, until
/// the two radii add up to the bound. Decides `dist(src, dst) <= bound`
/// exactly in `ceil(bound / 2)` passes (fewer when the balls meet early).
/// On directed streams the `dst` side walks edges backwards.
#[derive(Clone, Debug)]
pub struct BidirectionalBfs {
    bound: usize,
    directed: bool,
    radius: [usize; 2],
    visited: [Vec<bool>; 2],
    frontier: [Vec<bool>; 2],
    // in-pass only
    expand: [bool; 2],
    next: [Vec<bool>; 2],
}

impl BidirectionalBfs {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            directed: false,
            radius: [0; 2],
            visited: Default::default(),
            frontier: Default::default(),
            expand: [false; 2],
            next: Default::default(),
        }
    }

    fn discover(&mut self, side: usize, from: usize, to: usize) {
        if self.frontier[side][from] && !self.visited[side][to] {
            self.next[side][to] = true;
        }
    }
}

impl StreamingAlgorithm for BidirectionalBfs {
    fn name(&self) -> &'static str {
        "bidir-bfs"
    }

    fn init(&mut self, meta: &StreamMeta) -> Step {
        let n = meta.num_vertices;
        self.directed = meta.directed;
        self.radius = [0; 2];
        self.visited = [vec![false; n], vec![false; n]];
        self.visited[0][meta.source] = true;
        self.visited[1][meta.target] = true;
        self.frontier = self.visited.clone();
        if meta.source == meta.target {
            Step::Answer(true)
        } else if self.bound == 0 {
            Step::Answer(false)
        } else {
            Step::Continue
        }
    }

    fn begin_pass(&mut self, _pass: usize) {
        let reach = self.radius[0] + self.radius[1];
        self.expand = [reach < self.bound, reach + 1 < self.bound];
        let n = self.visited[0].len();
        self.next = [vec![false; n], vec![false; n]];
    }

    fn observe_edge(&mut self, a: usize, b: usize) {
        if self.expand[0] {
            self.discover(0, a, b);
            if !self.directed {
                self.discover(0, b, a);
            }
        }
        if self.expand[1] {
            self.discover(1, b, a);
            if !self.directed {
                self.discover(1, a, b);
            }
        }
    }

    fn end_pass(&mut self, _pass: usize) -> Step {
        for side in 0..2 {
            if self.expand[side] {
                let next = std::mem::take(&mut self.next[side]);
                for (seen, &new) in self.visited[side].iter_mut().zip(&next) {
                    *seen |= new;
                }
                self.frontier[side] = next;
                self.radius[side] += 1;
            }
        }
        if self.visited[0].iter().zip(&self.visited[1]).any(|(&a, &b)| a && b) {
            Step::Answer(true)
        } else if self.radius[0] + self.radius[1] >= self.bound {
            Step::Answer(false)
        } else {
            Step::Continue
        }
    }

    fn save_state(&self, out: &mut StateWriter) {
        let w = width_for(self.bound);
        for side in 0..2 {
            out.uint(self.radius[side], w);
            out.bitmap(&self.visited[side]);
            out.bitmap(&self.frontier[side]);
        }
    }

    fn load_state(&mut self, meta: &StreamMeta, input: &mut StateReader<'_>) -> Result<()> {
        let w = width_for(self.bound);
        let n = meta.num_vertices;
        self.directed = meta.directed;
        for side in 0..2 {
            self.radius[side] = input.uint(w)?;
            self.visited[side] = input.bitmap(n)?;
            self.frontier[side] = input.bitmap(n)?;
        }
        self.next = Default::default();
        self.expand = [false; 2];
        Ok(())
    }
}

/// Single-source labels relaxed in stream order (Bellman-Ford with
/// in-pass propagation), capped at the bound. Answers 1 once `dst` carries a
/// label at most the bound and 0 once a pass changes nothing. How many
/// levels a pass gains depends entirely on the edge order.
#[derive(Clone, Debug)]
pub struct ForwardBfs {
    bound: usize,
    directed: bool,
    target: usize,
    /// `bound + 1` stands for unreached.
    label: Vec<usize>,
    changed: bool,
}

impl ForwardBfs {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            directed: false,
            target: 0,
            label: Vec::new(),
            changed: false,
        }
    }

    fn relax(&mut self, from: usize, to: usize) {
        let cand = self.label[from] + 1;
        if cand <= self.bound && cand < self.label[to] {
            self.label[to] = cand;
            self.changed = true;
        }
    }
}

impl StreamingAlgorithm for ForwardBfs {
    fn name(&self) -> &'static str {
        "forward-bfs"
    }

    fn init(&mut self, meta: &StreamMeta) -> Step {
        self.directed = meta.directed;
        self.target = meta.target;
        self.label = vec![self.bound + 1; meta.num_vertices];
        self.label[meta.source] = 0;
        if meta.source == meta.target {
            Step::Answer(true)
        } else {
            Step::Continue
        }
    }

    fn begin_pass(&mut self, _pass: usize) {
        self.changed = false;
    }

    fn observe_edge(&mut self, a: usize, b: usize) {
        self.relax(a, b);
        if !self.directed {
            self.relax(b, a);
        }
    }

    fn end_pass(&mut self, _pass: usize) -> Step {
        if self.label[self.target] <= self.bound {
            Step::Answer(true)
        } else if !self.changed {
            Step::Answer(false)
        } else {
            Step::Continue
        }
    }

    fn save_state(&self, out: &mut StateWriter) {
        let w = width_for(self.bound + 1);
        for &l in &self.label {
            out.uint(l, w);
        }
    }

    fn load_state(&mut self, meta: &StreamMeta, input: &mut StateReader<'_>) -> Result<()> {
        let w = width_for(self.bound + 1);
        self.directed = meta.directed;
        self.target = meta.target;
        self.label = (0..meta.num_vertices)
            .map(|_| input.uint(w))
            .collect::<Result<_>>()?;
        if self.label.iter().any(|&l| l > self.bound + 1) {
            return Err(Error::State("label above the cap".into()));
        }
        Ok(())
    }
}

/// One-pass connectivity of `src` and `dst` in the underlying undirected
/// graph. The state is the parent array alone: `n * ceil(log2 n)` bits.
#[derive(Clone, Debug, Default)]
pub struct UnionFind {
    parent: Vec<usize>,
    source: usize,
    target: usize,
}

impl UnionFind {
    pub fn new() -> Self {
        Self::default()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            // path halving
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

impl StreamingAlgorithm for UnionFind {
    fn name(&self) -> &'static str {
        "union-find"
    }

    fn init(&mut self, meta: &StreamMeta) -> Step {
        self.parent = (0..meta.num_vertices).collect();
        self.source = meta.source;
        self.target = meta.target;
        Step::Continue
    }

    fn begin_pass(&mut self, _pass: usize) {}

    fn observe_edge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root index wins, so roots never need extra state
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn end_pass(&mut self, _pass: usize) -> Step {
        let (s, t) = (self.source, self.target);
        Step::Answer(self.find(s) == self.find(t))
    }

    fn save_state(&self, out: &mut StateWriter) {
        let w = width_for(self.parent.len().saturating_sub(1));
        for &p in &self.parent {
            out.uint(p, w);
        }
    }

    fn load_state(&mut self, meta: &StreamMeta, input: &mut StateReader<'_>) -> Result<()> {
        let n = meta.num_vertices;
        let w = width_for(n.saturating_sub(1));
        self.parent = (0..n).map(|_| input.uint(w)).collect::<Result<_>>()?;
        if self.parent.iter().any(|&p| p >= n) {
            return Err(Error::State("parent outside the vertex range".into()));
        }
        self.source = meta.source;
        self.target = meta.target;
        Ok(())
    }
}

/// Reachability from `src`, relaxed along edges in stream order until `dst`
/// is reached or a pass adds nothing. The state is one bit per vertex.
#[derive(Clone, Debug, Default)]
pub struct DirectedFrontier {
    reached: Vec<bool>,
    directed: bool,
    target: usize,
    changed: bool,
}

impl DirectedFrontier {
    pub fn new() -> Self {
        Self::default()
    }

    fn relax(&mut self, from: usize, to: usize) {
        if self.reached[from] && !self.reached[to] {
            self.reached[to] = true;
            self.changed = true;
        }
    }
}

impl StreamingAlgorithm for DirectedFrontier {
    fn name(&self) -> &'static str {
        "directed-frontier"
    }

    fn init(&mut self, meta: &StreamMeta) -> Step {
        self.reached = vec![false; meta.num_vertices];
        self.reached[meta.source] = true;
        self.directed = meta.directed;
        self.target = meta.target;
        if meta.source == meta.target {
            Step::Answer(true)
        } else {
            Step::Continue
        }
    }

    fn begin_pass(&mut self, _pass: usize) {
        self.changed = false;
    }

    fn observe_edge(&mut self, a: usize, b: usize) {
        self.relax(a, b);
        if !self.directed {
            self.relax(b, a);
        }
    }

    fn end_pass(&mut self, _pass: usize) -> Step {
        if self.reached[self.target] {
            Step::Answer(true)
        } else if !self.changed {
            Step::Answer(false)
        } else {
            Step::Continue
        }
    }

    fn save_state(&self, out: &mut StateWriter) {
        out.bitmap(&self.reached);
    }

    fn load_state(&mut self, meta: &StreamMeta, input: &mut StateReader<'_>) -> Result<()> {
        self.reached = input.bitmap(meta.num_vertices)?;
        self.directed = meta.directed;
        self.target = meta.target;
        Ok(())
    }
}
