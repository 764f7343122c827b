//! Trails and the exhaustive trail/path search engines.
//!
//! * [`find_closed_trail_through`]: closed trail through a vertex set and a prescribed edge.
//! * [`find_spanning_closed_trail`], [`find_dct`]: spanning and dominating closed trails.
//! * [`find_idt`]: `(e1, e2)`-trails whose interior vertices dominate every edge.
//! * [`hamiltonian_path`], [`hamiltonian_cycle`], [`find_non_hamiltonian_pair`]:
//!   bitset backtracking on simple graphs.
//!
//! Every engine is exact. Trail engines never traverse loops except as a
//! prescribed terminal or required edge; loops still count for domination.

mod closed;
mod hamilton;
mod idt;

pub use closed::{find_closed_trail_through, find_dct, find_spanning_closed_trail};
pub use hamilton::{
    find_non_hamiltonian_pair, hamiltonian_cycle, hamiltonian_path, is_hamiltonian,
    is_hamiltonian_connected,
};
pub use idt::find_idt;

use thiserror::Error;

use crate::invariants::vertices_dominate_edges;
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// Largest edge count the trail engines accept (used-edge sets are `u128`).
pub const MAX_TRAIL_EDGES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailError {
    #[error("trail must have exactly one more vertex than edges")]
    Shape,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge at position {0} does not join its neighbouring vertices")]
    NotIncident(usize),
    #[error("edge {0} is used twice")]
    RepeatedEdge(EdgeId),
    #[error("closed trail does not return to its start")]
    NotClosed,
    #[error("terminal edges must differ")]
    SameTerminalEdges,
    #[error("path endpoints must differ")]
    SameEndpoints,
    #[error("hamiltonicity needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("graph has {0} edges; trail search supports at most {MAX_TRAIL_EDGES}")]
    TooLarge(usize),
}

/// Alternating vertex/edge sequence with pairwise distinct edges.
///
/// `closed` marks a trail read cyclically (first vertex = last vertex, every
/// vertex interior). An open trail may still start and end at the same
/// vertex; its interior is every position except the two terminal ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    closed: bool,
}

impl Trail {
    /// The closed trail consisting of `v` alone.
    pub fn trivial(v: VertexId) -> Self {
        Trail {
            vertices: vec![v],
            edges: Vec::new(),
            closed: true,
        }
    }

    /// Builds and validates a trail in `host`.
    pub fn new(
        host: &Multigraph,
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
        closed: bool,
    ) -> Result<Self, TrailError> {
        let t = Trail {
            vertices,
            edges,
            closed,
        };
        t.validate(host)?;
        Ok(t)
    }

    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<EdgeId>, closed: bool) -> Self {
        Trail {
            vertices,
            edges,
            closed,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("trail has a vertex")
    }

    /// Interior vertices: all vertices for a closed trail, positions
    /// `1..len` for an open one (a terminal vertex revisited mid-trail counts).
    pub fn interior(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = if self.closed {
            self.vertices.clone()
        } else if self.vertices.len() <= 2 {
            Vec::new()
        } else {
            self.vertices[1..self.vertices.len() - 1].to_vec()
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct vertices visited.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut out = self.vertices.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn reversed(&self) -> Trail {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Trail {
            vertices,
            edges,
            closed: self.closed,
        }
    }

    /// Checks incidence, edge distinctness and closure against `host`.
    pub fn validate(&self, host: &Multigraph) -> Result<(), TrailError> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(TrailError::Shape);
        }
        for &v in &self.vertices {
            if !host.has_vertex(v) {
                return Err(TrailError::UnknownVertex(v));
            }
        }
        let mut seen = vec![false; host.edge_count()];
        for (i, &e) in self.edges.iter().enumerate() {
            if !host.has_edge(e) {
                return Err(TrailError::UnknownEdge(e));
            }
            if std::mem::replace(&mut seen[e.index()], true) {
                return Err(TrailError::RepeatedEdge(e));
            }
            let [a, b] = host.endpoints(e);
            let (x, y) = (self.vertices[i], self.vertices[i + 1]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(TrailError::NotIncident(i));
            }
        }
        if self.closed && self.start() != self.end() {
            return Err(TrailError::NotClosed);
        }
        Ok(())
    }

    /// For a closed trail: every edge of `host` meets a vertex of the trail.
    pub fn dominates(&self, host: &Multigraph) -> bool {
        vertices_dominate_edges(host, &self.vertex_set())
    }

    /// Interior vertices meet every edge of `host`.
    pub fn internally_dominates(&self, host: &Multigraph) -> bool {
        vertices_dominate_edges(host, &self.interior())
    }

    /// A closed trail restarted at its first visit of `v`.
    pub fn rotated_to(&self, v: VertexId) -> Option<Trail> {
        if !self.closed {
            return None;
        }
        let k = self.vertices.iter().position(|&x| x == v)?;
        if self.edges.is_empty() {
            return Some(self.clone());
        }
        let len = self.edges.len();
        let edges: Vec<EdgeId> = (0..len).map(|i| self.edges[(k + i) % len]).collect();
        let mut vertices: Vec<VertexId> = (0..len).map(|i| self.vertices[(k + i) % len]).collect();
        vertices.push(v);
        Some(Trail {
            vertices,
            edges,
            closed: true,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdtError {
    #[error(transparent)]
    Trail(#[from] TrailError),
    #[error("an internally dominating trail must be open")]
    Closed,
    #[error("trail must have at least two edges")]
    TooShort,
    #[error("interior vertices do not dominate every edge")]
    NotDominating,
}

/// An open trail with distinct terminal edges whose interior vertices
/// dominate every edge of the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdtWitness {
    pub trail: Trail,
    pub first_edge: EdgeId,
    pub last_edge: EdgeId,
}

impl IdtWitness {
    pub fn new(host: &Multigraph, trail: Trail) -> Result<Self, IdtError> {
        trail.validate(host)?;
        if trail.is_closed() {
            return Err(IdtError::Closed);
        }
        if trail.len() < 2 {
            return Err(IdtError::TooShort);
        }
        if !trail.internally_dominates(host) {
            return Err(IdtError::NotDominating);
        }
        Ok(IdtWitness {
            first_edge: trail.edges()[0],
            last_edge: *trail.edges().last().expect("nonempty"),
            trail,
        })
    }

    /// Re-checks every invariant against `host`.
    pub fn validate(&self, host: &Multigraph) -> Result<(), IdtError> {
        let again = IdtWitness::new(host, self.trail.clone())?;
        if again.first_edge != self.first_edge || again.last_edge != self.last_edge {
            return Err(IdtError::Trail(TrailError::Shape));
        }
        Ok(())
    }
}

fn check_size(h: &Multigraph) -> Result<(), TrailError> {
    if h.edge_count() > MAX_TRAIL_EDGES || h.vertex_count() > MAX_TRAIL_EDGES {
        return Err(TrailError::TooLarge(h.edge_count().max(h.vertex_count())));
    }
    Ok(())
}

/// Incident non-loop edges as `(edge, neighbour)`, plus per-vertex incident-edge masks.
pub(crate) struct TrailIndex {
    pub adj: Vec<Vec<(EdgeId, VertexId)>>,
    pub incident_mask: Vec<u128>,
    pub all_edges: u128,
}

impl TrailIndex {
    pub(crate) fn new(h: &Multigraph) -> Self {
        let mut adj = vec![Vec::new(); h.vertex_count()];
        let mut incident_mask = vec![0u128; h.vertex_count()];
        for (e, [u, v]) in h.edges() {
            incident_mask[u.index()] |= 1 << e.index();
            incident_mask[v.index()] |= 1 << e.index();
            if u != v {
                adj[u.index()].push((e, v));
                adj[v.index()].push((e, u));
            }
        }
        TrailIndex {
            adj,
            incident_mask,
            all_edges: crate::bits::low_mask128(h.edge_count()),
        }
    }

    /// Vertices reachable from `from` over non-loop edges in `free`, as a mask.
    pub(crate) fn reach(&self, from: VertexId, free: u128) -> u128 {
        let mut seen = 1u128 << from.index();
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &(e, w) in &self.adj[v.index()] {
                if free >> e.index() & 1 == 1 && seen >> w.index() & 1 == 0 {
                    seen |= 1 << w.index();
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Edges meeting some vertex of `vertices`.
    pub(crate) fn dominated(&self, vertices: u128) -> u128 {
        crate::bits::ones128(vertices).fold(0, |acc, v| acc | self.incident_mask[v])
    }
}
