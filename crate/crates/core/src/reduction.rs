//! Constructive hamiltonian paths in 3-connected line graphs with a
//! dominating set of size at most 3.
//!
//! For `g = L(H)` and endpoints `u`, `v` (edges `e1`, `e2` of `H`), the
//! terminal edges and the dominating edges are projected to the core, the
//! core is extended to `H_n` by an edge `e_n` standing for both terminals,
//! a closed trail of `H_n` through `e_n` and the projected endpoints is found,
//! and the trail is lifted to an `(e1, e2)`-IDT of `H`, which orders the
//! vertices of `g` into the path.

use thiserror::Error;

use crate::coremap::{core_of, CoreError, CoreMap};
use crate::invariants::{dominates, is_k_edge_connected, DominatingSet};
use crate::linegraph::{line_graph, preimage, LineGraphError, LineGraphMap};
use crate::multigraph::{EdgeId, GraphError, Multigraph, SimpleGraph, VertexId};
use crate::trails::{find_closed_trail_through, IdtWitness, Trail, TrailError};

/// Largest dominating set the construction accepts.
pub const MAX_DOMINATING: usize = 3;

/// Pipeline step at which a failure happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Input,
    Preimage,
    Core,
    Projection,
    ExtendedCore,
    ClosedTrail,
    Idt,
    HamiltonianPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("endpoints must be distinct vertices of the graph")]
    BadEndpoints,
    #[error("dominating set must dominate the graph and have at most {MAX_DOMINATING} vertices")]
    BadDominatingSet,
    #[error("not a line graph of a multigraph: {0}")]
    NotALineGraphOfMultigraph(#[from] LineGraphError),
    #[error("core is degenerate")]
    DegenerateCore,
    #[error("core: {0}")]
    Core(CoreError),
    #[error("projection: {0}")]
    Projection(CoreError),
    #[error("extended core is not 3-edge-connected")]
    ExtendedCoreNotThreeEdgeConnected,
    #[error("no closed trail through the projected vertices and the joining edge")]
    TrailNotFound,
    #[error("trail search: {0}")]
    Trail(#[from] TrailError),
    #[error("lift failed at {stage:?}: {detail}")]
    LiftFailed { stage: Stage, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl PipelineError {
    pub fn stage(&self) -> Stage {
        match self {
            PipelineError::BadEndpoints
            | PipelineError::BadDominatingSet
            | PipelineError::Graph(_) => Stage::Input,
            PipelineError::NotALineGraphOfMultigraph(_) => Stage::Preimage,
            PipelineError::DegenerateCore | PipelineError::Core(_) => Stage::Core,
            PipelineError::Projection(_) => Stage::Projection,
            PipelineError::ExtendedCoreNotThreeEdgeConnected => Stage::ExtendedCore,
            PipelineError::TrailNotFound | PipelineError::Trail(_) => Stage::ClosedTrail,
            PipelineError::LiftFailed { stage, .. } => *stage,
        }
    }
}

fn lift_failed(stage: Stage, detail: impl std::fmt::Display) -> PipelineError {
    PipelineError::LiftFailed {
        stage,
        detail: detail.to_string(),
    }
}

/// Core edge standing for `e`: itself if it survives, the owning core edge
/// if it lies on a suppressed path, and for a pendant edge the smallest-id
/// core edge at its support vertex (or the core edge through the support
/// vertex if that vertex was suppressed).
pub fn project_edge(cm: &CoreMap, e: EdgeId) -> Result<EdgeId, CoreError> {
    cm.original.check_edge(e)?;
    if let Some(c) = cm.owning_edge(e) {
        return Ok(c);
    }
    let [x, y] = cm.original.endpoints(e);
    let support = if cm.original.deg(x) >= cm.original.deg(y) {
        x
    } else {
        y
    };
    if let Some(c) = cm.vertex_image[support.index()] {
        return cm
            .core
            .incident(c)
            .iter()
            .copied()
            .min()
            .ok_or(CoreError::NoCoreEdge(e));
    }
    cm.suppressed_location[support.index()].ok_or(CoreError::NoCoreLocation(support))
}

/// The two vertices added to the core and the halves of the subdivided
/// edges: `halves[i] = [a_i - s_i, s_i - b_i]` where `[a_i, b_i]` are the
/// endpoints of the `i`-th subdivided core edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionRecord {
    pub vertices: [VertexId; 2],
    pub halves: [[EdgeId; 2]; 2],
}

/// The extended core. Core vertices and the ids of untouched core edges
/// carry over unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedCore {
    pub h_n: Multigraph,
    pub e_n: EdgeId,
    pub subdivision: Option<SubdivisionRecord>,
}

/// The core itself when `e0_1 = e0_2`; otherwise the core with both edges
/// subdivided and the two new vertices joined by `e_n`.
pub fn build_hn(cm: &CoreMap, e0_1: EdgeId, e0_2: EdgeId) -> Result<ExtendedCore, PipelineError> {
    cm.core.check_edge(e0_1)?;
    cm.core.check_edge(e0_2)?;
    let ext = if e0_1 == e0_2 {
        ExtendedCore {
            h_n: cm.core.clone(),
            e_n: e0_1,
            subdivision: None,
        }
    } else {
        let n = cm.core.vertex_count() as u32;
        let m = cm.core.edge_count() as u32;
        let (s1, s2) = (n, n + 1);
        let mut edges: Vec<(u32, u32)> = cm.core.edge_list();
        let [a1, b1] = cm.core.endpoints(e0_1);
        let [a2, b2] = cm.core.endpoints(e0_2);
        edges[e0_1.index()] = (a1.0, s1);
        edges[e0_2.index()] = (a2.0, s2);
        edges.push((s1, b1.0));
        edges.push((s2, b2.0));
        edges.push((s1, s2));
        ExtendedCore {
            h_n: Multigraph::from_edges(n as usize + 2, &edges)?,
            e_n: EdgeId(m + 2),
            subdivision: Some(SubdivisionRecord {
                vertices: [VertexId(s1), VertexId(s2)],
                halves: [[e0_1, EdgeId(m)], [e0_2, EdgeId(m + 1)]],
            }),
        }
    };
    if !is_k_edge_connected(&ext.h_n, 3) {
        return Err(PipelineError::ExtendedCoreNotThreeEdgeConnected);
    }
    Ok(ext)
}

/// Endpoints of the projections of `f`, sorted; these are core vertices and
/// keep their ids in the extended core.
pub fn pick_z(cm: &CoreMap, f: &[EdgeId]) -> Result<Vec<VertexId>, CoreError> {
    let mut z = Vec::with_capacity(2 * f.len());
    for &e in f {
        z.extend(cm.core.endpoints(project_edge(cm, e)?));
    }
    z.sort_unstable();
    z.dedup();
    Ok(z)
}

/// Everything derived from `g`, the terminals and the dominating edges.
#[derive(Debug, Clone)]
pub struct PipelineContext {
    pub g: SimpleGraph,
    pub h: Multigraph,
    pub cm: CoreMap,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub e0_1: EdgeId,
    pub e0_2: EdgeId,
    pub h_n: Multigraph,
    pub e_n: EdgeId,
    pub subdivision: Option<SubdivisionRecord>,
    pub z: Vec<VertexId>,
}

/// An original path starting with a terminal edge and ending at the
/// original vertex of core vertex `end`.
#[derive(Debug, Clone)]
struct Route {
    end: VertexId,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

/// Routes from terminal edge `e` to either endpoint of its projection `c`.
fn routes(cm: &CoreMap, e: EdgeId, c: EdgeId) -> Vec<Route> {
    let x = &cm.expansions[c.index()];
    let [p, q] = cm.core.endpoints(c);
    // (vertices and edges before joining x, join index heading to p, join index heading to q)
    let (lead, lead_edges, back_from, fwd_from) =
        if let Some(i) = x.edges.iter().position(|&f| f == e) {
            (vec![], vec![], i + 1, i)
        } else {
            // a pendant edge: its support vertex lies on x
            let [a, b] = cm.original.endpoints(e);
            let joined = x.vertices.iter().position(|&v| v == a).map(|k| (k, b));
            let Some((k, leaf)) =
                joined.or_else(|| x.vertices.iter().position(|&v| v == b).map(|k| (k, a)))
            else {
                return vec![];
            };
            (vec![leaf], vec![e], k, k)
        };
    let mut out = Vec::with_capacity(2);
    // towards p: walk x backwards from back_from
    {
        let mut vertices = lead.clone();
        let mut edges = lead_edges.clone();
        vertices.extend(x.vertices[..=back_from].iter().rev());
        edges.extend(x.edges[..back_from].iter().rev());
        out.push(Route {
            end: p,
            vertices,
            edges,
        });
    }
    // towards q: walk x forwards from fwd_from
    {
        let mut vertices = lead;
        let mut edges = lead_edges;
        vertices.extend(&x.vertices[fwd_from..]);
        edges.extend(&x.edges[fwd_from..]);
        out.push(Route {
            end: q,
            vertices,
            edges,
        });
    }
    out
}

impl PipelineContext {
    /// Builds the context for terminal edges `e1`, `e2` and dominating edges `f`.
    pub fn new(
        g: &SimpleGraph,
        cm: CoreMap,
        e1: EdgeId,
        e2: EdgeId,
        f: &[EdgeId],
    ) -> Result<Self, PipelineError> {
        let e0_1 = project_edge(&cm, e1).map_err(PipelineError::Projection)?;
        let e0_2 = project_edge(&cm, e2).map_err(PipelineError::Projection)?;
        let z = pick_z(&cm, f).map_err(PipelineError::Projection)?;
        let ext = build_hn(&cm, e0_1, e0_2)?;
        Ok(PipelineContext {
            g: g.clone(),
            h: cm.original.clone(),
            cm,
            e1,
            e2,
            e0_1,
            e0_2,
            h_n: ext.h_n,
            e_n: ext.e_n,
            subdivision: ext.subdivision,
            z,
        })
    }

    /// The closed trail of `h_n` through `z` and `e_n`.
    pub fn closed_trail(&self) -> Result<Trail, PipelineError> {
        find_closed_trail_through(&self.h_n, &self.z, self.e_n)?.ok_or(PipelineError::TrailNotFound)
    }
}

/// Rotates closed `t` so that its first edge is `e`.
fn rotate_to_edge(t: &Trail, e: EdgeId) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let k = t.edges().iter().position(|&f| f == e)?;
    let len = t.len();
    let edges: Vec<EdgeId> = (0..len).map(|i| t.edges()[(k + i) % len]).collect();
    let mut vertices: Vec<VertexId> = (0..len).map(|i| t.vertices()[(k + i) % len]).collect();
    vertices.push(vertices[0]);
    Some((vertices, edges))
}

/// Lifts the closed trail `t` of `h_n` to an `(e1, e2)`-IDT of `h`.
pub fn idt_from_trail(ctx: &PipelineContext, t: &Trail) -> Result<IdtWitness, PipelineError> {
    let fail = |d: &str| lift_failed(Stage::Idt, d);
    t.validate(&ctx.h_n)
        .map_err(|e| lift_failed(Stage::Idt, e))?;
    if !t.is_closed() {
        return Err(fail("trail is not closed"));
    }
    let (vertices, edges) = rotate_to_edge(t, ctx.e_n).ok_or_else(|| fail("trail misses e_n"))?;
    let k = edges.len();
    // middle: a core trail from c_start to c_end, with the allowed (c1, c2) orientations
    let (middle, orientations): (Trail, Vec<bool>) = match &ctx.subdivision {
        None => {
            let w = Trail::new(
                &ctx.cm.core,
                vertices[1..].to_vec(),
                edges[1..].to_vec(),
                false,
            )
            .map_err(|e| lift_failed(Stage::Idt, e))?;
            (w, vec![true, false])
        }
        Some(rec) => {
            // s1 -e_n- s2 -half2- ... -half1- s1, possibly traversed backwards
            let (vertices, edges) = if vertices[0] == rec.vertices[0] {
                (vertices, edges)
            } else {
                let mut v = vertices;
                let mut e = edges;
                v.reverse();
                e.reverse();
                e.rotate_right(1);
                v.pop();
                v.rotate_right(1);
                v.push(v[0]);
                (v, e)
            };
            if vertices[0] != rec.vertices[0] || vertices[1] != rec.vertices[1] || k < 3 {
                return Err(fail("unexpected shape around the subdivision vertices"));
            }
            // s1 and s2 have degree 3, so the rest of the trail avoids every half
            let inner_v = vertices[2..k].to_vec();
            let inner_e = edges[2..k - 1].to_vec();
            if inner_e.iter().any(|&e| e == ctx.e0_1 || e == ctx.e0_2) {
                return Err(fail("trail reuses a subdivided edge"));
            }
            // W runs from c2 to c1, so the IDT walks it backwards
            let w = Trail::new(&ctx.cm.core, inner_v, inner_e, false)
                .map_err(|e| lift_failed(Stage::Idt, e))?;
            (w, vec![false])
        }
    };
    let r1s = routes(&ctx.cm, ctx.e1, ctx.e0_1);
    let r2s = routes(&ctx.cm, ctx.e2, ctx.e0_2);
    for forward in orientations {
        let w = if forward {
            middle.clone()
        } else {
            middle.reversed()
        };
        let lifted = ctx
            .cm
            .lift_trail(&w)
            .map_err(|e| lift_failed(Stage::Idt, e))?;
        for r1 in r1s.iter().filter(|r| r.end == w.start()) {
            for r2 in r2s.iter().filter(|r| r.end == w.end()) {
                if r1.edges.iter().any(|e| r2.edges.contains(e)) {
                    continue;
                }
                let mut vs = r1.vertices.clone();
                let mut es = r1.edges.clone();
                vs.extend_from_slice(&lifted.vertices()[1..]);
                es.extend_from_slice(lifted.edges());
                vs.extend(r2.vertices.iter().rev().skip(1));
                es.extend(r2.edges.iter().rev());
                let Ok(trail) = Trail::new(&ctx.h, vs, es, false) else {
                    continue;
                };
                if let Ok(w) = IdtWitness::new(&ctx.h, trail) {
                    return Ok(w);
                }
            }
        }
    }
    Err(fail(
        "no route combination yields an internally dominating trail",
    ))
}

/// Hamiltonian path of `lgm.target` from `L(first_edge)` to `L(last_edge)`:
/// the IDT's edges in order, each remaining edge inserted after the first
/// trail edge entering an interior vertex it touches.
pub fn idt_to_ham_path(lgm: &LineGraphMap, w: &IdtWitness) -> Result<Trail, PipelineError> {
    let fail = |d: String| lift_failed(Stage::HamiltonianPath, d);
    w.validate(&lgm.source).map_err(|e| fail(e.to_string()))?;
    let tv = w.trail.vertices();
    let te = w.trail.edges();
    let k = te.len();
    let mut on_trail = vec![false; lgm.source.edge_count()];
    for &e in te {
        on_trail[e.index()] = true;
    }
    let mut buckets: Vec<Vec<EdgeId>> = vec![Vec::new(); k];
    for e in lgm.source.edge_ids().filter(|e| !on_trail[e.index()]) {
        let j = (1..k)
            .find(|&j| lgm.source.is_incident(e, tv[j]))
            .ok_or_else(|| fail(format!("edge {e} is not dominated")))?;
        buckets[j].push(e);
    }
    let mut order: Vec<VertexId> = Vec::with_capacity(lgm.source.edge_count());
    for (j, &e) in te.iter().enumerate() {
        if j > 0 {
            order.extend(buckets[j].iter().map(|&f| lgm.vertex_of(f)));
        }
        order.push(lgm.vertex_of(e));
    }
    let g = &lgm.target;
    let edges = order
        .windows(2)
        .map(|p| {
            g.edge_between(p[0], p[1])
                .ok_or_else(|| fail(format!("{} and {} are not adjacent", p[0], p[1])))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let path =
        Trail::new(g.as_multigraph(), order, edges, false).map_err(|e| fail(e.to_string()))?;
    check_hamiltonian_path(
        g,
        &path,
        lgm.vertex_of(w.first_edge),
        lgm.vertex_of(w.last_edge),
    )
    .map_err(|d| fail(d.to_string()))?;
    Ok(path)
}

/// Independent check that `p` is a hamiltonian `a`-`b` path of `g`.
pub fn check_hamiltonian_path(
    g: &SimpleGraph,
    p: &Trail,
    a: VertexId,
    b: VertexId,
) -> Result<(), &'static str> {
    p.validate(g.as_multigraph()).map_err(|_| "not a trail")?;
    if p.is_closed() || p.start() != a || p.end() != b {
        return Err("wrong endpoints");
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in p.vertices() {
        if std::mem::replace(&mut seen[v.index()], true) {
            return Err("vertex repeated");
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err("vertex missed");
    }
    Ok(())
}

/// Per-graph state shared by every endpoint pair.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub lgm: LineGraphMap,
    /// `None` when `H` is a star (so `g` is complete and the core is degenerate).
    pub cm: Option<CoreMap>,
    pub f: Vec<EdgeId>,
}

impl Pipeline {
    pub fn new(g: &SimpleGraph, d: &DominatingSet) -> Result<Self, PipelineError> {
        if d.len() > MAX_DOMINATING || !dominates(g, &d.vertices) {
            return Err(PipelineError::BadDominatingSet);
        }
        let h = preimage(g)?;
        let lgm = line_graph(&h)?;
        let cm = match core_of(&h) {
            Ok(cm) => Some(cm),
            Err(CoreError::DegenerateCore) if star_center(&h).is_some() => None,
            Err(CoreError::DegenerateCore) => return Err(PipelineError::DegenerateCore),
            Err(e) => return Err(PipelineError::Core(e)),
        };
        let f = d.vertices.iter().map(|&v| lgm.edge_of(v)).collect();
        Ok(Pipeline { lgm, cm, f })
    }

    pub fn context(
        &self,
        u: VertexId,
        v: VertexId,
    ) -> Result<Option<PipelineContext>, PipelineError> {
        let g = &self.lgm.target;
        if u == v || u.index() >= g.vertex_count() || v.index() >= g.vertex_count() {
            return Err(PipelineError::BadEndpoints);
        }
        match &self.cm {
            None => Ok(None),
            Some(cm) => PipelineContext::new(
                g,
                cm.clone(),
                self.lgm.edge_of(u),
                self.lgm.edge_of(v),
                &self.f,
            )
            .map(Some),
        }
    }

    /// The `(e1, e2)`-IDT for `u = L(e1)`, `v = L(e2)`.
    pub fn idt(&self, u: VertexId, v: VertexId) -> Result<IdtWitness, PipelineError> {
        let Some(ctx) = self.context(u, v)? else {
            return star_idt(&self.lgm.source, self.lgm.edge_of(u), self.lgm.edge_of(v));
        };
        let t = ctx.closed_trail()?;
        idt_from_trail(&ctx, &t)
    }

    pub fn ham_path(&self, u: VertexId, v: VertexId) -> Result<Trail, PipelineError> {
        let w = self.idt(u, v)?;
        idt_to_ham_path(&self.lgm, &w)
    }
}

/// Centre of `h` when every edge is a non-loop edge at one common vertex.
fn star_center(h: &Multigraph) -> Option<VertexId> {
    if h.has_loops() || h.edge_count() < 2 {
        return None;
    }
    let [a, b] = h.endpoints(EdgeId(0));
    [a, b]
        .into_iter()
        .find(|&c| h.edges().all(|(_, ends)| ends.contains(&c)))
}

fn star_idt(h: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<IdtWitness, PipelineError> {
    let c = star_center(h).ok_or(PipelineError::DegenerateCore)?;
    let t = Trail::new(
        h,
        vec![h.opposite(e1, c), c, h.opposite(e2, c)],
        vec![e1, e2],
        false,
    )
    .map_err(|e| lift_failed(Stage::Idt, e))?;
    IdtWitness::new(h, t).map_err(|e| lift_failed(Stage::Idt, e))
}

/// Hamiltonian `u`-`v` path of `g` built through the core of its preimage.
pub fn pipeline_ham_path(
    g: &SimpleGraph,
    u: VertexId,
    v: VertexId,
    d: &DominatingSet,
) -> Result<Trail, PipelineError> {
    Pipeline::new(g, d)?.ham_path(u, v)
}
