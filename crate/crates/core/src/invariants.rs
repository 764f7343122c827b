//! Graph predicates and numeric invariants: claws, vertex and edge
//! connectivity, domination, simplicial vertices and essential edge cuts.

use thiserror::Error;

use crate::bits;
use crate::flow::FlowNetwork;
use crate::multigraph::{EdgeId, GraphError, Multigraph, SimpleGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("domination number of the empty graph is undefined")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An induced `K_{1,3}`: `center` adjacent to three pairwise non-adjacent leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claw {
    pub center: VertexId,
    pub leaves: [VertexId; 3],
}

/// First induced claw found, scanning centres in id order.
pub fn find_claw(g: &SimpleGraph) -> Option<Claw> {
    for v in 0..g.vertex_count() {
        let nb = g.adj(v);
        for a in bits::ones(nb) {
            let rest_a = nb & !g.adj(a) & !bits::low_mask(a + 1);
            for b in bits::ones(rest_a) {
                let rest_b = rest_a & !g.adj(b) & !bits::low_mask(b + 1);
                if let Some(c) = bits::ones(rest_b).next() {
                    return Some(Claw {
                        center: VertexId(v as u32),
                        leaves: [a, b, c].map(|x| VertexId(x as u32)),
                    });
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &SimpleGraph) -> bool {
    find_claw(g).is_none()
}

fn is_complete(g: &SimpleGraph) -> bool {
    let all = g.all_mask();
    (0..g.vertex_count()).all(|v| g.adj(v) | 1 << v == all)
}

/// Number of internally vertex-disjoint `s`-`t` paths (non-adjacent `s`, `t`),
/// capped at `limit`.
fn local_vertex_connectivity(g: &SimpleGraph, s: usize, t: usize, limit: u32) -> u32 {
    let n = g.vertex_count();
    // v_in = 2v, v_out = 2v + 1
    let mut net = FlowNetwork::new(2 * n);
    let big = n as u32;
    for v in 0..n {
        let through = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, through);
        for w in bits::ones(g.adj(v)) {
            net.add_arc(2 * v + 1, 2 * w, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Minimum number of vertices whose removal disconnects `g` or leaves a
/// single vertex; `K_n` gives `n - 1`.
pub fn vertex_connectivity(g: &SimpleGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    if is_complete(g) {
        return n - 1;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = (0..n).map(|v| g.adj(v).count_ones()).min().unwrap_or(0);
    for s in 0..n {
        for t in s + 1..n {
            if g.adj(s) >> t & 1 == 1 {
                continue;
            }
            best = best.min(local_vertex_connectivity(g, s, t, best));
            if best == 0 {
                return 0;
            }
        }
    }
    best as usize
}

/// `vertex_connectivity(g) >= k`, decided by deleting every vertex set of
/// size below `k` when `k <= 3` and by flows otherwise.
pub fn is_k_connected(g: &SimpleGraph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return true;
    }
    if n < k + 1 {
        return false;
    }
    if is_complete(g) {
        return true;
    }
    if (0..n).any(|v| (g.adj(v).count_ones() as usize) < k) {
        return false;
    }
    if k > 3 {
        return vertex_connectivity(g) >= k;
    }
    let all = g.all_mask();
    let connected_without = |removed: u64| {
        let left = all & !removed;
        let start = left.trailing_zeros() as usize;
        crate::multigraph::simple_reach(g.adjacency(), start, left) == left
    };
    if !connected_without(0) {
        return false;
    }
    for a in 0..n {
        if k >= 2 && !connected_without(1 << a) {
            return false;
        }
        if k >= 3 {
            for b in a + 1..n {
                if !connected_without(1 << a | 1 << b) {
                    return false;
                }
            }
        }
    }
    true
}

/// A vertex set dominating its host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingSet {
    pub vertices: Vec<VertexId>,
}

impl DominatingSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Every vertex of `g` is in the set or adjacent to a member.
    pub fn dominates(&self, g: &SimpleGraph) -> bool {
        dominates(g, &self.vertices)
    }
}

pub fn dominates(g: &SimpleGraph, set: &[VertexId]) -> bool {
    let mut covered = 0u64;
    for &v in set {
        if !g.as_multigraph().has_vertex(v) {
            return false;
        }
        covered |= g.adj(v.index()) | 1 << v.index();
    }
    covered == g.all_mask()
}

struct Domination<'a> {
    closed: &'a [u64],
    chosen: Vec<usize>,
}

impl Domination<'_> {
    fn search(&mut self, undominated: u64, budget: usize) -> bool {
        if undominated == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let best_gain = self
            .closed
            .iter()
            .map(|&c| (c & undominated).count_ones() as usize)
            .max()
            .unwrap_or(0);
        if best_gain * budget < undominated.count_ones() as usize {
            return false;
        }
        // branch on the undominated vertex with the fewest dominators
        let pivot = bits::ones(undominated)
            .min_by_key(|&u| self.closed[u].count_ones())
            .expect("nonempty");
        let mut options: Vec<usize> = bits::ones(self.closed[pivot]).collect();
        options.sort_by_key(|&w| std::cmp::Reverse((self.closed[w] & undominated).count_ones()));
        for w in options {
            self.chosen.push(w);
            if self.search(undominated & !self.closed[w], budget - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

fn closed_neighbourhoods(g: &SimpleGraph) -> Vec<u64> {
    (0..g.vertex_count()).map(|v| g.adj(v) | 1 << v).collect()
}

fn greedy_dominating(closed: &[u64], all: u64) -> Vec<usize> {
    let mut undominated = all;
    let mut chosen = Vec::new();
    while undominated != 0 {
        let w = (0..closed.len())
            .max_by_key(|&w| ((closed[w] & undominated).count_ones(), std::cmp::Reverse(w)))
            .expect("nonempty graph");
        chosen.push(w);
        undominated &= !closed[w];
    }
    chosen
}

fn to_set(mut vs: Vec<usize>) -> DominatingSet {
    vs.sort_unstable();
    DominatingSet {
        vertices: vs.into_iter().map(|v| VertexId(v as u32)).collect(),
    }
}

/// A dominating set of size at most `k`, if one exists.
pub fn has_dominating_set(g: &SimpleGraph, k: usize) -> Option<DominatingSet> {
    let closed = closed_neighbourhoods(g);
    let all = g.all_mask();
    if all == 0 {
        return Some(to_set(Vec::new()));
    }
    let greedy = greedy_dominating(&closed, all);
    if greedy.len() <= k {
        return Some(to_set(greedy));
    }
    let mut d = Domination {
        closed: &closed,
        chosen: Vec::new(),
    };
    if d.search(all, k) {
        Some(to_set(d.chosen))
    } else {
        None
    }
}

/// A minimum dominating set.
pub fn minimum_dominating_set(g: &SimpleGraph) -> Result<DominatingSet, InvariantError> {
    if g.vertex_count() == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    let closed = closed_neighbourhoods(g);
    let upper = greedy_dominating(&closed, g.all_mask());
    for k in 1..upper.len() {
        let mut d = Domination {
            closed: &closed,
            chosen: Vec::new(),
        };
        if d.search(g.all_mask(), k) {
            return Ok(to_set(d.chosen));
        }
    }
    Ok(to_set(upper))
}

pub fn domination_number(g: &SimpleGraph) -> Result<usize, InvariantError> {
    minimum_dominating_set(g).map(|d| d.len())
}

/// Vertices whose neighbourhood is a clique (isolated and degree-1 vertices included).
pub fn simplicial_vertices(g: &SimpleGraph) -> Vec<VertexId> {
    (0..g.vertex_count())
        .filter(|&v| is_simplicial(g, v))
        .map(|v| VertexId(v as u32))
        .collect()
}

pub(crate) fn is_simplicial(g: &SimpleGraph, v: usize) -> bool {
    let nb = g.adj(v);
    bits::ones(nb).all(|u| nb & !(1 << u) & !g.adj(u) == 0)
}

/// Counts components of `h - removed` that contain at least one edge.
fn nontrivial_components(h: &Multigraph, removed: &[EdgeId]) -> usize {
    let keep = |e: EdgeId| !removed.contains(&e);
    let (labels, count) = h.component_labels(keep);
    let mut has_edge = vec![false; count];
    for (e, [u, _]) in h.edges() {
        if keep(e) {
            has_edge[labels[u.index()] as usize] = true;
        }
    }
    has_edge.iter().filter(|&&b| b).count()
}

/// An edge set of size below `k` whose removal leaves two or more components
/// carrying edges, or `None` when `h` is essentially `k`-edge-connected.
/// Exhaustive over all edge subsets of size `< k`.
pub fn find_essential_cut(h: &Multigraph, k: usize) -> Result<Option<Vec<EdgeId>>, InvariantError> {
    if !h.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    let m = h.edge_count();
    let mut subset: Vec<EdgeId> = Vec::new();
    fn rec(h: &Multigraph, m: usize, start: usize, left: usize, subset: &mut Vec<EdgeId>) -> bool {
        if !subset.is_empty() && nontrivial_components(h, subset) >= 2 {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in start..m {
            subset.push(EdgeId(i as u32));
            if rec(h, m, i + 1, left - 1, subset) {
                return true;
            }
            subset.pop();
        }
        false
    }
    if rec(h, m, 0, k.saturating_sub(1), &mut subset) {
        Ok(Some(subset))
    } else {
        Ok(None)
    }
}

pub fn is_essentially_k_edge_connected(h: &Multigraph, k: usize) -> Result<bool, InvariantError> {
    Ok(find_essential_cut(h, k)?.is_none())
}

/// Minimum number of edges whose removal disconnects `h` (loops ignored,
/// parallel edges counted). Zero for disconnected graphs and for graphs
/// with fewer than two vertices.
pub fn edge_connectivity(h: &Multigraph) -> usize {
    let n = h.vertex_count();
    if n < 2 || !h.is_connected() {
        return 0;
    }
    let mut best = h
        .vertices()
        .map(|v| h.deg(v) - 2 * h.loop_count(v))
        .min()
        .unwrap_or(0) as u32;
    for t in 1..n {
        let mut net = FlowNetwork::new(n);
        for (_, [u, v]) in h.edges() {
            if u != v {
                net.add_arc(u.index(), v.index(), 1);
                net.add_arc(v.index(), u.index(), 1);
            }
        }
        best = best.min(net.max_flow(0, t, best));
    }
    best as usize
}

pub fn is_k_edge_connected(h: &Multigraph, k: usize) -> bool {
    h.vertex_count() >= 2 && edge_connectivity(h) >= k
}

/// Every edge of `h` has an endpoint in `vertices`.
pub fn vertices_dominate_edges(h: &Multigraph, vertices: &[VertexId]) -> bool {
    let mut inside = vec![false; h.vertex_count()];
    for &v in vertices {
        if let Some(slot) = inside.get_mut(v.index()) {
            *slot = true;
        }
    }
    h.edges()
        .all(|(_, [a, b])| inside[a.index()] || inside[b.index()])
}

/// Every edge of `h` shares an endpoint with some edge of `f`.
pub fn edge_triple_dominates(h: &Multigraph, f: &[EdgeId]) -> Result<bool, InvariantError> {
    let mut ends = Vec::with_capacity(2 * f.len());
    for &e in f {
        h.check_edge(e)?;
        ends.extend(h.endpoints(e));
    }
    Ok(vertices_dominate_edges(h, &ends))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        crate::constructions::petersen()
    }

    /// Removes every subset of at most 3 vertices; independent of the flow code.
    fn brute_connectivity(g: &SimpleGraph) -> usize {
        let n = g.vertex_count();
        for size in 0..n.saturating_sub(1) {
            let mut found = false;
            for mask in 0u64..1 << n {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let left = g.all_mask() & !mask;
                let start = left.trailing_zeros() as usize;
                if crate::multigraph::simple_reach(g.adjacency(), start, left) != left {
                    found = true;
                    break;
                }
            }
            if found {
                return size;
            }
        }
        n.saturating_sub(1)
    }

    fn brute_domination(g: &SimpleGraph) -> usize {
        let n = g.vertex_count();
        (0u64..1 << n)
            .filter(|&mask| {
                let set: Vec<VertexId> = bits::ones(mask).map(|v| VertexId(v as u32)).collect();
                dominates(g, &set)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn claw_examples() {
        let claw = SimpleGraph::star(3);
        let c = find_claw(&claw).unwrap();
        assert_eq!(c.center, VertexId(0));
        assert_eq!(c.leaves, [VertexId(1), VertexId(2), VertexId(3)]);
        assert!(!is_claw_free(&petersen()));
        assert!(is_claw_free(&SimpleGraph::complete(5)));
        assert!(is_claw_free(&SimpleGraph::cycle(6)));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(vertex_connectivity(&SimpleGraph::complete(4)), 3);
        assert_eq!(vertex_connectivity(&SimpleGraph::path(3)), 1);
        assert_eq!(vertex_connectivity(&petersen()), 3);
        assert_eq!(brute_connectivity(&petersen()), 3);
        assert_eq!(vertex_connectivity(&SimpleGraph::complete(1)), 0);
        assert_eq!(
            vertex_connectivity(&SimpleGraph::from_edges(3, &[(0, 1)]).unwrap()),
            0
        );
        assert!(is_k_connected(&petersen(), 3));
        assert!(!is_k_connected(&petersen(), 4));
        assert!(is_k_connected(&SimpleGraph::cycle(5), 2));
        assert!(!is_k_connected(&SimpleGraph::cycle(5), 3));
    }

    #[test]
    fn domination_examples() {
        let k5 = SimpleGraph::complete(5);
        assert_eq!(has_dominating_set(&k5, 1).unwrap().len(), 1);
        let c7 = SimpleGraph::cycle(7);
        assert_eq!(brute_domination(&c7), 3);
        assert!(has_dominating_set(&c7, 2).is_none());
        let d = has_dominating_set(&c7, 3).unwrap();
        assert!(d.dominates(&c7));
        let p = petersen();
        assert_eq!(brute_domination(&p), 3);
        assert!(has_dominating_set(&p, 2).is_none());
        assert!(has_dominating_set(&p, 3).unwrap().dominates(&p));
        assert_eq!(domination_number(&SimpleGraph::complete(1)), Ok(1));
        assert_eq!(domination_number(&c7), Ok(3));
        assert_eq!(domination_number(&SimpleGraph::star(9)), Ok(1));
        assert_eq!(
            domination_number(&SimpleGraph::default()),
            Err(InvariantError::EmptyGraph)
        );
    }

    #[test]
    fn simplicial_examples() {
        assert_eq!(simplicial_vertices(&SimpleGraph::complete(3)).len(), 3);
        assert!(simplicial_vertices(&SimpleGraph::cycle(4)).is_empty());
        assert_eq!(
            simplicial_vertices(&SimpleGraph::path(4)),
            vec![VertexId(0), VertexId(3)]
        );
    }

    #[test]
    fn essential_cut_examples() {
        let claw = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        for k in 1..5 {
            assert_eq!(is_essentially_k_edge_connected(&claw, k), Ok(true));
        }
        // C4 with a pendant at every vertex
        let c4p = Multigraph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let cut = find_essential_cut(&c4p, 3).unwrap().unwrap();
        assert_eq!(cut.len(), 2);
        assert!(nontrivial_components(&c4p, &cut) >= 2);
        let k4 = SimpleGraph::complete(4).into_multigraph();
        assert_eq!(is_essentially_k_edge_connected(&k4, 3), Ok(true));
        let split = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            find_essential_cut(&split, 3),
            Err(InvariantError::Disconnected)
        );
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(
            edge_connectivity(&SimpleGraph::complete(4).into_multigraph()),
            3
        );
        assert_eq!(edge_connectivity(&petersen().into_multigraph()), 3);
        let triple = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 0)]).unwrap();
        assert_eq!(edge_connectivity(&triple), 3);
        assert_eq!(
            edge_connectivity(&SimpleGraph::cycle(5).into_multigraph()),
            2
        );
        assert!(!is_k_edge_connected(&Multigraph::empty(1), 1));
    }

    #[test]
    fn edge_domination_examples() {
        let k4 = SimpleGraph::complete(4).into_multigraph();
        let all: Vec<EdgeId> = k4.edge_ids().collect();
        assert_eq!(edge_triple_dominates(&k4, &all), Ok(true));
        let star = SimpleGraph::star(6).into_multigraph();
        assert_eq!(edge_triple_dominates(&star, &[EdgeId(3)]), Ok(true));
        let c6 = SimpleGraph::cycle(6).into_multigraph();
        assert_eq!(edge_triple_dominates(&c6, &[EdgeId(0)]), Ok(false));
        assert!(edge_triple_dominates(&c6, &[EdgeId(9)]).is_err());
    }
}
