use std::collections::HashSet;

use rayon::prelude::*;

use super::{Trail, TrailError};
use crate::bits;
use crate::multigraph::{simple_reach, EdgeId, SimpleGraph, VertexId};

/// Graphs at least this large check vertex pairs in parallel.
const PARALLEL_PAIRS_FROM: usize = 12;

/// Backtracking for a path `start .. target` through every vertex.
///
/// Pruning: every unvisited vertex other than the target needs two
/// available neighbours, the target needs one; the unvisited vertices must
/// stay connected; a vertex whose only two options include the current
/// vertex is a forced move. Dead `(current, visited)` states are memoised.
struct PathSearch<'a> {
    adj: &'a [u64],
    all: u64,
    target: usize,
    path: Vec<usize>,
    dead: HashSet<(u8, u64)>,
}

impl PathSearch<'_> {
    fn extend(&mut self, cur: usize, visited: u64) -> bool {
        let remaining = self.all & !visited;
        let target_bit = 1u64 << self.target;
        if remaining == target_bit {
            if self.adj[cur] & target_bit != 0 {
                self.path.push(self.target);
                return true;
            }
            return false;
        }
        if self.dead.contains(&(cur as u8, visited)) {
            return false;
        }
        let ok = self.explore(cur, visited, remaining, target_bit);
        if !ok {
            self.dead.insert((cur as u8, visited));
        }
        ok
    }

    fn explore(&mut self, cur: usize, visited: u64, remaining: u64, target_bit: u64) -> bool {
        let open = remaining | 1 << cur;
        let mut forced: Option<usize> = None;
        for u in bits::ones(remaining) {
            let avail = self.adj[u] & open;
            let need = if u == self.target { 1 } else { 2 };
            let d = avail.count_ones();
            if d < need {
                return false;
            }
            if u != self.target && d == 2 && avail >> cur & 1 == 1 {
                if forced.is_some() {
                    return false;
                }
                forced = Some(u);
            }
        }
        if simple_reach(self.adj, self.target, remaining) != remaining {
            return false;
        }
        let candidates = self.adj[cur] & remaining & !target_bit;
        let mut options: Vec<usize> = match forced {
            Some(u) => vec![u],
            None => bits::ones(candidates).collect(),
        };
        // fewest onward options first
        options.sort_by_key(|&u| (self.adj[u] & remaining).count_ones());
        for u in options {
            self.path.push(u);
            if self.extend(u, visited | 1 << u) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

fn path_trail(g: &SimpleGraph, path: &[usize], closed: bool) -> Trail {
    let vertices: Vec<VertexId> = path.iter().map(|&v| VertexId(v as u32)).collect();
    let edges: Vec<EdgeId> = vertices
        .windows(2)
        .map(|w| {
            g.edge_between(w[0], w[1])
                .expect("consecutive path vertices are adjacent")
        })
        .collect();
    Trail::from_parts(vertices, edges, closed)
}

fn search_path(g: &SimpleGraph, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut s = PathSearch {
        adj: g.adjacency(),
        all: g.all_mask(),
        target: b,
        path: vec![a],
        dead: HashSet::new(),
    };
    if s.extend(a, 1 << a) {
        Some(s.path)
    } else {
        None
    }
}

/// A hamiltonian `a`-`b` path, as a trail in `g`.
pub fn hamiltonian_path(
    g: &SimpleGraph,
    a: VertexId,
    b: VertexId,
) -> Result<Option<Trail>, TrailError> {
    for v in [a, b] {
        if v.index() >= g.vertex_count() {
            return Err(TrailError::UnknownVertex(v));
        }
    }
    if a == b {
        return Err(TrailError::SameEndpoints);
    }
    Ok(search_path(g, a.index(), b.index()).map(|p| path_trail(g, &p, false)))
}

/// A hamiltonian cycle through vertex 0, as a closed trail.
pub fn hamiltonian_cycle(g: &SimpleGraph) -> Result<Option<Trail>, TrailError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(TrailError::TooFewVertices(n));
    }
    for t in bits::ones(g.adj(0)) {
        if let Some(mut p) = search_path(g, 0, t) {
            p.push(0);
            return Ok(Some(path_trail(g, &p, true)));
        }
    }
    Ok(None)
}

pub fn is_hamiltonian(g: &SimpleGraph) -> Result<bool, TrailError> {
    Ok(hamiltonian_cycle(g)?.is_some())
}

/// The first pair `(a, b)`, `a < b`, in lexicographic order with no
/// hamiltonian `a`-`b` path. Graphs on at most one vertex have none.
pub fn find_non_hamiltonian_pair(g: &SimpleGraph) -> Option<(VertexId, VertexId)> {
    let n = g.vertex_count();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let fails = |&(a, b): &(usize, usize)| search_path(g, a, b).is_none();
    let found = if n >= PARALLEL_PAIRS_FROM {
        pairs.par_iter().copied().find_first(|p| fails(p))
    } else {
        pairs.iter().copied().find(|p| fails(p))
    };
    found.map(|(a, b)| (VertexId(a as u32), VertexId(b as u32)))
}

/// A hamiltonian path joins every pair of distinct vertices.
pub fn is_hamiltonian_connected(g: &SimpleGraph) -> bool {
    find_non_hamiltonian_pair(g).is_none()
}
