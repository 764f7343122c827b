//! Multigraphs with explicit edge identity, and the simple-graph restriction.
//!
//! Graphs are immutable values. Editing operations ([`subdivide`], [`suppress`],
//! [`contract`]) build a new graph and report how ids moved through a
//! [`Renumbering`] or a [`ContractionMap`].

mod edit;
mod iso;
mod simple;

pub use edit::{
    contract, subdivide, suppress, ContractionDefect, ContractionMap, Renumbering, Subdivision,
    Suppression,
};
pub use iso::{isomorphic, isomorphism, isomorphism_with_limit, DEFAULT_ISO_LIMIT};
pub(crate) use simple::reach as simple_reach;
pub use simple::{SimpleGraph, MAX_SIMPLE_VERTICES};

use std::fmt;

use thiserror::Error;

/// Dense vertex index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

/// Dense edge index. Parallel edges carry distinct ids.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: VertexId, degree: usize },
    #[error("vertex {0} carries a loop")]
    LoopAtVertex(VertexId),
    #[error("simple graph cannot contain the loop {0}")]
    Loop(EdgeId),
    #[error("simple graph cannot contain parallel edges between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("graph has {actual} vertices, limit is {limit}")]
    TooLarge { limit: usize, actual: usize },
}

/// Undirected multigraph. Loops are allowed and contribute 2 to the degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Multigraph {
    ends: Vec<[VertexId; 2]>,
    /// Incident edge ids per vertex; a loop is listed once.
    incidence: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Multigraph {
            ends: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    /// Builds a multigraph on vertices `0..n` whose edge `i` joins `edges[i]`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(n);
        for &(u, v) in edges {
            g.push_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Builds from endpoint pairs already typed as vertex ids.
    pub fn from_endpoints(
        n: usize,
        ends: impl IntoIterator<Item = [VertexId; 2]>,
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(n);
        for [u, v] in ends {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let id = EdgeId(self.ends.len() as u32);
        self.ends.push([u, v]);
        self.incidence[u.index()].push(id);
        if u != v {
            self.incidence[v.index()].push(id);
        }
        Ok(id)
    }

    /// Copy of `self` with one extra edge; returns the new edge's id.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<(Multigraph, EdgeId), GraphError> {
        let mut g = self.clone();
        let e = g.push_edge(u, v)?;
        Ok((g, e))
    }

    /// Copy of `self` with `k` extra isolated vertices; returns the first new id.
    pub fn with_vertices(&self, k: usize) -> (Multigraph, VertexId) {
        let mut g = self.clone();
        let first = VertexId(g.incidence.len() as u32);
        g.incidence.extend(std::iter::repeat_with(Vec::new).take(k));
        (g, first)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    /// All edges with their endpoints, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.ends
            .iter()
            .enumerate()
            .map(|(i, &ends)| (EdgeId(i as u32), ends))
    }

    #[inline]
    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count()
    }

    #[inline]
    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edge_count()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if self.has_edge(e) {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(e))
        }
    }

    /// Endpoints of `e`. Panics on an unknown edge.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e.index()]
    }

    #[inline]
    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [u, v] = self.endpoints(e);
        u == v
    }

    /// The endpoint of `e` opposite to `v` (`v` itself for a loop).
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.endpoints(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    #[inline]
    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        let [a, b] = self.endpoints(e);
        a == v || b == v
    }

    /// Edges incident to `v`, each loop once. Panics on an unknown vertex.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.index()]
    }

    /// Degree with the loop convention: a loop contributes 2.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    /// Unchecked [`Multigraph::degree`].
    #[inline]
    pub fn deg(&self, v: VertexId) -> usize {
        self.incidence[v.index()]
            .iter()
            .map(|&e| if self.is_loop(e) { 2 } else { 1 })
            .sum()
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.incident(v)
            .iter()
            .filter(|&&e| self.is_loop(e))
            .count()
    }

    /// Number of edges joining `u` and `v` (loops at `u` when `u == v`).
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incident(u)
            .iter()
            .filter(|&&e| self.opposite(e, u) == v)
            .count()
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .incident(v)
            .iter()
            .map(|&e| self.opposite(e, v))
            .filter(|&w| w != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_loops(&self) -> bool {
        self.edge_ids().any(|e| self.is_loop(e))
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen: Vec<(VertexId, VertexId)> = self
            .ends
            .iter()
            .map(|&[u, v]| (u.min(v), u.max(v)))
            .collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    /// Endpoint pairs as raw indices, in edge order.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        self.ends.iter().map(|&[u, v]| (u.0, v.0)).collect()
    }

    /// Same graph with every edge written `(min, max)` and edges sorted.
    /// Two graphs with equal normal forms differ only in edge numbering.
    pub fn normalized(&self) -> Multigraph {
        let mut pairs: Vec<(u32, u32)> = self
            .ends
            .iter()
            .map(|&[u, v]| (u.0.min(v.0), u.0.max(v.0)))
            .collect();
        pairs.sort_unstable();
        Multigraph::from_edges(self.vertex_count(), &pairs).expect("endpoints already validated")
    }

    /// Reachability ignoring loops; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        self.component_labels(|_| true).1 == 1
    }

    /// Connected components of the spanning subgraph formed by the edges
    /// accepted by `keep`. Returns a label per vertex (labels ordered by
    /// smallest member) and the number of components.
    pub fn component_labels(&self, keep: impl Fn(EdgeId) -> bool) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = count;
            stack.push(VertexId(s as u32));
            while let Some(v) = stack.pop() {
                for &e in self.incident(v) {
                    if !keep(e) {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if label[w.index()] == u32::MAX {
                        label[w.index()] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// Sum of all degrees; equals twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.vertices().map(|v| self.deg(v)).sum()
    }
}

/// Free-function form of [`Multigraph::degree`].
pub fn degree(g: &Multigraph, v: VertexId) -> Result<usize, GraphError> {
    g.degree(v)
}

/// Free-function form of [`Multigraph::is_connected`].
pub fn is_connected(g: &Multigraph) -> bool {
    g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw() -> Multigraph {
        Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn degree_examples() {
        let g = Multigraph::from_edges(3, &[(1, 1)]).unwrap();
        assert_eq!(g.degree(VertexId(0)), Ok(0));
        assert_eq!(g.degree(VertexId(1)), Ok(2));
        assert_eq!(claw().degree(VertexId(0)), Ok(3));
        assert_eq!(
            g.degree(VertexId(7)),
            Err(GraphError::UnknownVertex(VertexId(7)))
        );
    }

    #[test]
    fn connectivity_examples() {
        assert!(Multigraph::empty(0).is_connected());
        assert!(Multigraph::empty(1).is_connected());
        let two_edges = Multigraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        let looped = Multigraph::from_edges(2, &[(0, 0), (1, 1)]).unwrap();
        assert!(!looped.is_connected());
    }

    #[test]
    fn rejects_unknown_endpoints() {
        assert_eq!(
            Multigraph::from_edges(2, &[(0, 2)]),
            Err(GraphError::UnknownVertex(VertexId(2)))
        );
    }

    #[test]
    fn multiplicity_and_parallel() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.multiplicity(VertexId(0), VertexId(1)), 2);
        assert_eq!(g.multiplicity(VertexId(2), VertexId(2)), 1);
        assert!(g.has_parallel_edges());
        assert!(g.has_loops());
        assert_eq!(g.degree_sum(), 2 * g.edge_count());
        assert_eq!(g.neighbors(VertexId(1)), vec![VertexId(0), VertexId(2)]);
    }
}
