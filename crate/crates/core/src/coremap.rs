//! The core of a multigraph: pendant edges removed, degree-2 vertices
//! suppressed, with the correspondence needed to lift core trails back.

use thiserror::Error;

use crate::invariants::{
    find_essential_cut, is_k_edge_connected, vertices_dominate_edges, InvariantError,
};
use crate::multigraph::{EdgeId, GraphError, Multigraph, VertexId};
use crate::trails::{Trail, TrailError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has the essential edge cut {0:?}")]
    NotEssentially3EdgeConnected(Vec<EdgeId>),
    #[error("core collapses to a single vertex")]
    DegenerateCore,
    #[error("core is not 3-edge-connected")]
    NotThreeEdgeConnected,
    #[error("vertex {0} has no location in the core")]
    NoCoreLocation(VertexId),
    #[error("edge {0} has no location in the core")]
    NoCoreEdge(EdgeId),
    #[error("lift of a spanning closed trail does not dominate every edge")]
    LiftNotDominating,
    #[error("invalid core trail: {0}")]
    InvalidTrail(#[from] TrailError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The path of original edges a core edge stands for. `vertices[0]` and
/// `vertices.last()` correspond to the core edge's first and second endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Where a non-pendant vertex of the original graph sits in the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreLocation {
    Vertex(VertexId),
    /// A suppressed vertex inside the expansion of this core edge.
    EdgeInterior(EdgeId),
}

/// `core` together with its correspondence to `original`.
///
/// Core vertices are the surviving original vertices in id order. Core edges
/// are sorted by the smallest original edge id in their expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreMap {
    pub original: Multigraph,
    pub core: Multigraph,
    /// Sorted by id.
    pub removed_pendants: Vec<EdgeId>,
    /// Indexed by core edge; edge-disjoint paths covering every non-pendant edge.
    pub expansions: Vec<Expansion>,
    /// Indexed by original vertex.
    pub vertex_image: Vec<Option<VertexId>>,
    /// Indexed by original vertex; the core edge whose expansion passes through it.
    pub suppressed_location: Vec<Option<EdgeId>>,
}

/// Core of `h`, which must be connected and essentially 3-edge-connected.
pub fn core_of(h: &Multigraph) -> Result<CoreMap, CoreError> {
    let order: Vec<VertexId> = h.vertices().collect();
    core_with_order(h, &order)
}

/// As [`core_of`], stripping pendant edges by scanning vertices in `order`.
pub fn core_with_order(h: &Multigraph, order: &[VertexId]) -> Result<CoreMap, CoreError> {
    match find_essential_cut(h, 3) {
        Err(InvariantError::Disconnected) => return Err(CoreError::Disconnected),
        Err(InvariantError::Graph(e)) => return Err(e.into()),
        Err(InvariantError::EmptyGraph) => return Err(CoreError::DegenerateCore),
        Ok(Some(cut)) => return Err(CoreError::NotEssentially3EdgeConnected(cut)),
        Ok(None) => {}
    }
    build(h, order)
}

/// As [`core_of`] without the essential 3-edge-connectivity precondition.
/// The result must still be nondegenerate and 3-edge-connected.
pub fn core_unchecked(h: &Multigraph) -> Result<CoreMap, CoreError> {
    if !h.is_connected() {
        return Err(CoreError::Disconnected);
    }
    let order: Vec<VertexId> = h.vertices().collect();
    build(h, &order)
}

fn build(h: &Multigraph, order: &[VertexId]) -> Result<CoreMap, CoreError> {
    for &v in order {
        h.check_vertex(v)?;
    }

    let n = h.vertex_count();
    let mut alive = vec![true; h.edge_count()];
    let mut degree: Vec<usize> = h.vertices().map(|v| h.deg(v)).collect();
    let mut removed_pendants = Vec::new();
    loop {
        let mut changed = false;
        for &v in order {
            if degree[v.index()] != 1 {
                continue;
            }
            let e = h
                .incident(v)
                .iter()
                .copied()
                .find(|e| alive[e.index()])
                .expect("degree one");
            alive[e.index()] = false;
            removed_pendants.push(e);
            let w = h.opposite(e, v);
            degree[v.index()] -= 1;
            degree[w.index()] -= 1;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    removed_pendants.sort_unstable();

    // a degree-2 vertex carrying a loop is isolated in what remains
    let branch: Vec<bool> = (0..n).map(|v| degree[v] >= 3).collect();
    let mut vertex_image = vec![None; n];
    let mut next = 0u32;
    for v in 0..n {
        if branch[v] {
            vertex_image[v] = Some(VertexId(next));
            next += 1;
        }
    }
    if next <= 1 {
        return Err(CoreError::DegenerateCore);
    }

    let mut walked = vec![false; h.edge_count()];
    let mut chains: Vec<Expansion> = Vec::new();
    for u in h.vertices().filter(|u| branch[u.index()]) {
        for &first in h.incident(u) {
            if !alive[first.index()] || walked[first.index()] {
                continue;
            }
            let mut vertices = vec![u];
            let mut edges = vec![first];
            walked[first.index()] = true;
            let mut cur = h.opposite(first, u);
            let mut via = first;
            while !branch[cur.index()] {
                vertices.push(cur);
                let e = h
                    .incident(cur)
                    .iter()
                    .copied()
                    .find(|&e| e != via && alive[e.index()])
                    .expect("suppressed vertex has two live edges");
                walked[e.index()] = true;
                edges.push(e);
                cur = h.opposite(e, cur);
                via = e;
            }
            vertices.push(cur);
            chains.push(Expansion { vertices, edges });
        }
    }
    for c in &mut chains {
        let (a, b) = (c.vertices[0], *c.vertices.last().expect("nonempty"));
        if a > b || (a == b && c.edges[0] > *c.edges.last().expect("nonempty")) {
            c.vertices.reverse();
            c.edges.reverse();
        }
    }
    chains.sort_by_key(|c| *c.edges.iter().min().expect("nonempty"));

    let mut suppressed_location = vec![None; n];
    let mut core_edges = Vec::with_capacity(chains.len());
    for (i, c) in chains.iter().enumerate() {
        for &v in &c.vertices[1..c.vertices.len() - 1] {
            suppressed_location[v.index()] = Some(EdgeId(i as u32));
        }
        let image = |v: VertexId| {
            vertex_image[v.index()]
                .expect("chains end at branch vertices")
                .0
        };
        core_edges.push((
            image(c.vertices[0]),
            image(*c.vertices.last().expect("nonempty")),
        ));
    }
    let core = Multigraph::from_edges(next as usize, &core_edges)?;
    if !is_k_edge_connected(&core, 3) {
        return Err(CoreError::NotThreeEdgeConnected);
    }
    Ok(CoreMap {
        original: h.clone(),
        core,
        removed_pendants,
        expansions: chains,
        vertex_image,
        suppressed_location,
    })
}

impl CoreMap {
    /// Original vertex standing for core vertex `c`.
    pub fn preimage_vertex(&self, c: VertexId) -> VertexId {
        let e = self.core.incident(c)[0];
        let x = &self.expansions[e.index()];
        if self.core.endpoints(e)[0] == c {
            x.vertices[0]
        } else {
            *x.vertices.last().expect("nonempty")
        }
    }

    /// Core edge whose expansion contains `e`, if `e` is not a pendant.
    pub fn owning_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.expansions
            .iter()
            .position(|x| x.edges.contains(&e))
            .map(|i| EdgeId(i as u32))
    }

    /// Expansion of `c` walked from core vertex `from`.
    pub fn expansion_from(&self, c: EdgeId, from: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
        let x = &self.expansions[c.index()];
        if self.core.endpoints(c)[0] == from {
            (x.vertices.clone(), x.edges.clone())
        } else {
            let mut v = x.vertices.clone();
            let mut e = x.edges.clone();
            v.reverse();
            e.reverse();
            (v, e)
        }
    }

    /// Original trail obtained by replacing every core edge of `t` by its expansion.
    pub fn lift_trail(&self, t: &Trail) -> Result<Trail, CoreError> {
        t.validate(&self.core)?;
        if t.is_empty() {
            return Ok(Trail::trivial(self.preimage_vertex(t.start())));
        }
        let mut vertices = vec![self.preimage_vertex(t.start())];
        let mut edges = Vec::new();
        for (i, &c) in t.edges().iter().enumerate() {
            let (v, e) = self.expansion_from(c, t.vertices()[i]);
            vertices.extend_from_slice(&v[1..]);
            edges.extend(e);
        }
        Ok(Trail::new(&self.original, vertices, edges, t.is_closed())?)
    }
}

/// Where `v` sits in the core: a core vertex, or inside a core edge.
pub fn project_vertex(cm: &CoreMap, v: VertexId) -> Result<CoreLocation, CoreError> {
    cm.original.check_vertex(v)?;
    if let Some(c) = cm.vertex_image[v.index()] {
        return Ok(CoreLocation::Vertex(c));
    }
    cm.suppressed_location[v.index()]
        .map(CoreLocation::EdgeInterior)
        .ok_or(CoreError::NoCoreLocation(v))
}

/// Lift of a closed core trail. A lift of a spanning trail must dominate
/// every original edge.
pub fn lift_closed_trail(cm: &CoreMap, t: &Trail) -> Result<Trail, CoreError> {
    if !t.is_closed() {
        return Err(CoreError::InvalidTrail(TrailError::NotClosed));
    }
    let lifted = cm.lift_trail(t)?;
    if t.vertex_set().len() == cm.core.vertex_count()
        && !vertices_dominate_edges(&cm.original, &lifted.vertex_set())
    {
        return Err(CoreError::LiftNotDominating);
    }
    Ok(lifted)
}
