use super::{EdgeId, GraphError, Multigraph, VertexId};
use crate::bits;

/// Vertex bound for [`SimpleGraph`]; adjacency is kept as one `u64` row per vertex.
pub const MAX_SIMPLE_VERTICES: usize = 64;

/// A loop-free multigraph with edge multiplicity one, plus bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    graph: Multigraph,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        SimpleGraph::from_multigraph(Multigraph::from_edges(n, edges)?)
    }

    /// Validates that `graph` has no loops or parallel edges.
    pub fn from_multigraph(graph: Multigraph) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n > MAX_SIMPLE_VERTICES {
            return Err(GraphError::TooLarge {
                limit: MAX_SIMPLE_VERTICES,
                actual: n,
            });
        }
        let mut adj = vec![0u64; n];
        for (e, [u, v]) in graph.edges() {
            if u == v {
                return Err(GraphError::Loop(e));
            }
            if adj[u.index()] >> v.index() & 1 == 1 {
                return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
            }
            adj[u.index()] |= 1 << v.index();
            adj[v.index()] |= 1 << u.index();
        }
        Ok(SimpleGraph { graph, adj })
    }

    /// Builds from symmetric adjacency rows; edges are numbered in
    /// lexicographic `(u, v)` order with `u < v`.
    pub fn from_adjacency(adj: &[u64]) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_SIMPLE_VERTICES {
            return Err(GraphError::TooLarge {
                limit: MAX_SIMPLE_VERTICES,
                actual: n,
            });
        }
        let mut edges = Vec::new();
        for u in 0..n {
            if adj[u] >> u & 1 == 1 {
                return Err(GraphError::LoopAtVertex(VertexId(u as u32)));
            }
            for v in bits::ones(adj[u] & !bits::low_mask(u + 1)) {
                if v >= n || adj[v] >> u & 1 == 0 {
                    return Err(GraphError::UnknownVertex(VertexId(v as u32)));
                }
                edges.push((u as u32, v as u32));
            }
        }
        SimpleGraph::from_edges(n, &edges)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        SimpleGraph::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// Cycle `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        SimpleGraph::from_edges(n, &edges).expect("cycle is simple for n >= 3")
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_edges(n, &edges).expect("path is simple")
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<(u32, u32)> = (1..=k as u32).map(|i| (0, i)).collect();
        SimpleGraph::from_edges(k + 1, &edges).expect("star is simple")
    }

    #[inline]
    pub fn as_multigraph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn into_multigraph(self) -> Multigraph {
        self.graph
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices()
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn all_mask(&self) -> u64 {
        bits::low_mask(self.vertex_count())
    }

    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()] >> v.index() & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].count_ones() as usize
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        bits::ones(self.adj[v.index()]).map(|w| VertexId(w as u32))
    }

    /// The id of the edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if !self.graph.has_vertex(u) || !self.graph.has_vertex(v) || !self.adjacent(u, v) {
            return None;
        }
        self.graph
            .incident(u)
            .iter()
            .copied()
            .find(|&e| self.graph.opposite(e, u) == v)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        reach(&self.adj, 0, self.all_mask()) == self.all_mask()
    }
}

/// Vertices reachable from `start` inside `allowed` (which must contain `start`).
#[inline]
pub(crate) fn reach(adj: &[u64], start: usize, allowed: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits::ones(frontier) {
            next |= adj[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}
