//! Offline ground truth on the whole graph.

use std::collections::VecDeque;

use crate::gadgets::{two_coloring, GraphStream};
use crate::Result;

/// BFS distance from `src` to `dst`; `None` when unreachable. Respects edge
/// direction on directed streams.
pub fn oracle_distance(g: &GraphStream) -> Option<usize> {
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; g.num_vertices()];
    dist[g.source()] = 0;
    let mut queue = VecDeque::from([g.source()]);
    while let Some(x) = queue.pop_front() {
        if x == g.target() {
            return Some(dist[x]);
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Iterative DFS from `src`.
pub fn oracle_reachable(g: &GraphStream) -> bool {
    let adj = g.adjacency();
    let mut seen = vec![false; g.num_vertices()];
    let mut stack = vec![g.source()];
    seen[g.source()] = true;
    while let Some(x) = stack.pop() {
        if x == g.target() {
            return true;
        }
        for &y in &adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    false
}

const FREE: usize = usize::MAX;

/// Hopcroft-Karp on the underlying undirected graph, which must be
/// bipartite.
pub fn maximum_matching_size(g: &GraphStream) -> Result<usize> {
    let color = two_coloring(g)?;
    let n = g.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        let (l, r) = if color[a] { (b, a) } else { (a, b) };
        adj[l].push(r);
    }
    let left: Vec<usize> = (0..n).filter(|&x| !color[x]).collect();
    let mut mate = vec![FREE; n];
    let mut layer = vec![usize::MAX; n];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for &l in &left {
            if mate[l] == FREE {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate[r] {
                    FREE => found = true,
                    m if layer[m] == usize::MAX => {
                        layer[m] = layer[l] + 1;
                        queue.push_back(m);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return Ok(size);
        }
        let mut cursor = vec![0usize; n];
        for &l in &left {
            if mate[l] == FREE && augment(l, &adj, &mut mate, &mut layer, &mut cursor) {
                size += 1;
            }
        }
    }
}

/// Layered DFS along shortest augmenting paths, iterative to keep deep
/// gadgets off the call stack.
fn augment(
    start: usize,
    adj: &[Vec<usize>],
    mate: &mut [usize],
    layer: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    let mut path = vec![start];
    while let Some(&l) = path.last() {
        if cursor[l] == adj[l].len() {
            layer[l] = usize::MAX;
            path.pop();
            continue;
        }
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let m = mate[r];
        if m == FREE {
            // flip the path: each left vertex on it takes the right vertex
            // it advanced through
            let mut r = r;
            while let Some(l) = path.pop() {
                let prev = mate[l];
                mate[l] = r;
                mate[r] = l;
                r = prev;
            }
            return true;
        }
        if layer[m] != usize::MAX && layer[m] == layer[l] + 1 {
            path.push(m);
        }
    }
    false
}

/// Whether a perfect matching exists; `Error::NotBipartite` otherwise.
pub fn oracle_perfect_matching(g: &GraphStream) -> Result<bool> {
    Ok(2 * maximum_matching_size(g)? == g.num_vertices())
}
