use super::{EdgeId, GraphError, Multigraph, VertexId};

/// Where the ids of the old graph went. `None` marks a deleted element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renumbering {
    pub vertices: Vec<Option<VertexId>>,
    pub edges: Vec<Option<EdgeId>>,
}

impl Renumbering {
    #[inline]
    pub fn vertex(&self, v: VertexId) -> Option<VertexId> {
        self.vertices.get(v.index()).copied().flatten()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edges.get(e.index()).copied().flatten()
    }
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Multigraph,
    pub new_vertex: VertexId,
    /// `halves[0]` joins the first endpoint of the old edge to `new_vertex`,
    /// `halves[1]` joins `new_vertex` to the second endpoint.
    pub halves: [EdgeId; 2],
    pub renumbering: Renumbering,
}

#[derive(Clone, Debug)]
pub struct Suppression {
    pub graph: Multigraph,
    pub merged_edge: EdgeId,
    pub renumbering: Renumbering,
}

/// Replaces edge `e` by a path of length two through a new vertex.
///
/// Surviving edges keep their relative order; the two halves are appended.
/// Subdividing a loop yields a double edge to the new vertex.
pub fn subdivide(g: &Multigraph, e: EdgeId) -> Result<Subdivision, GraphError> {
    g.check_edge(e)?;
    let [a, b] = g.endpoints(e);
    let n = g.vertex_count();
    let new_vertex = VertexId(n as u32);
    let mut ends: Vec<[VertexId; 2]> = Vec::with_capacity(g.edge_count() + 1);
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for (id, pair) in g.edges() {
        if id == e {
            edge_map.push(None);
        } else {
            edge_map.push(Some(EdgeId(ends.len() as u32)));
            ends.push(pair);
        }
    }
    let first = EdgeId(ends.len() as u32);
    ends.push([a, new_vertex]);
    ends.push([new_vertex, b]);
    let graph = Multigraph::from_endpoints(n + 1, ends)?;
    Ok(Subdivision {
        graph,
        new_vertex,
        halves: [first, EdgeId(first.0 + 1)],
        renumbering: Renumbering {
            vertices: (0..n as u32).map(|i| Some(VertexId(i))).collect(),
            edges: edge_map,
        },
    })
}

/// Removes a degree-2 vertex and joins its two neighbours by one new edge
/// (a loop when both edges go to the same neighbour). The merged edge is
/// appended after the surviving edges; vertices above `v` shift down by one.
pub fn suppress(g: &Multigraph, v: VertexId) -> Result<Suppression, GraphError> {
    g.check_vertex(v)?;
    let degree = g.deg(v);
    if degree != 2 {
        return Err(GraphError::NotDegreeTwo { vertex: v, degree });
    }
    let inc = g.incident(v);
    if inc.iter().any(|&e| g.is_loop(e)) {
        return Err(GraphError::LoopAtVertex(v));
    }
    debug_assert_eq!(inc.len(), 2);
    let (e1, e2) = (inc[0], inc[1]);
    let x = g.opposite(e1, v);
    let y = g.opposite(e2, v);

    let vertices: Vec<Option<VertexId>> = g
        .vertices()
        .map(|w| match w.cmp(&v) {
            std::cmp::Ordering::Less => Some(w),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(VertexId(w.0 - 1)),
        })
        .collect();
    let remap = |w: VertexId| vertices[w.index()].expect("neighbour of v survives");

    let mut ends = Vec::with_capacity(g.edge_count() - 1);
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for (id, [a, b]) in g.edges() {
        if id == e1 || id == e2 {
            edge_map.push(None);
        } else {
            edge_map.push(Some(EdgeId(ends.len() as u32)));
            ends.push([remap(a), remap(b)]);
        }
    }
    let merged_edge = EdgeId(ends.len() as u32);
    ends.push([remap(x), remap(y)]);
    let graph = Multigraph::from_endpoints(g.vertex_count() - 1, ends)?;
    Ok(Suppression {
        graph,
        merged_edge,
        renumbering: Renumbering {
            vertices,
            edges: edge_map,
        },
    })
}

/// A contraction `source -> target` with explicit vertex and edge images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub source: Multigraph,
    pub target: Multigraph,
    pub vertex_map: Vec<VertexId>,
    /// `None` for edges collapsed inside a fiber.
    pub edge_map: Vec<Option<EdgeId>>,
}

/// Why a [`ContractionMap`] fails to describe a contraction.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ContractionDefect {
    #[error("vertex or edge map has the wrong length")]
    LengthMismatch,
    #[error("vertex map points outside the target")]
    VertexOutOfRange,
    #[error("target vertex {0} has an empty fiber")]
    NotSurjective(VertexId),
    #[error("fiber of target vertex {0} is not connected by collapsed edges")]
    DisconnectedFiber(VertexId),
    #[error("source edge {0} inside one fiber is mapped to a target edge")]
    InnerEdgeMapped(EdgeId),
    #[error("source edge {0} between fibers is not mapped")]
    CrossingEdgeUnmapped(EdgeId),
    #[error("source edge {0} maps to a target edge with different end images")]
    WrongEndpoints(EdgeId),
    #[error("edge map is not a bijection onto the target edges")]
    EdgeMapNotBijective,
}

impl ContractionMap {
    /// Checks every structural invariant of a contraction.
    pub fn validate(&self) -> Result<(), ContractionDefect> {
        let src = &self.source;
        let tgt = &self.target;
        if self.vertex_map.len() != src.vertex_count() || self.edge_map.len() != src.edge_count() {
            return Err(ContractionDefect::LengthMismatch);
        }
        if self.vertex_map.iter().any(|&t| !tgt.has_vertex(t)) {
            return Err(ContractionDefect::VertexOutOfRange);
        }
        let mut hit = vec![false; tgt.vertex_count()];
        for &t in &self.vertex_map {
            hit[t.index()] = true;
        }
        if let Some(t) = hit.iter().position(|&h| !h) {
            return Err(ContractionDefect::NotSurjective(VertexId(t as u32)));
        }

        let mut used = vec![false; tgt.edge_count()];
        for (e, [a, b]) in src.edges() {
            let (fa, fb) = (self.vertex_map[a.index()], self.vertex_map[b.index()]);
            match self.edge_map[e.index()] {
                Some(t) => {
                    if fa == fb {
                        return Err(ContractionDefect::InnerEdgeMapped(e));
                    }
                    if !tgt.has_edge(t) || used[t.index()] {
                        return Err(ContractionDefect::EdgeMapNotBijective);
                    }
                    used[t.index()] = true;
                    let [x, y] = tgt.endpoints(t);
                    if !((x == fa && y == fb) || (x == fb && y == fa)) {
                        return Err(ContractionDefect::WrongEndpoints(e));
                    }
                }
                None => {
                    if fa != fb {
                        return Err(ContractionDefect::CrossingEdgeUnmapped(e));
                    }
                }
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(ContractionDefect::EdgeMapNotBijective);
        }

        // each fiber must be connected through collapsed edges
        let (labels, _) = src.component_labels(|e| self.edge_map[e.index()].is_none());
        let mut fiber_label: Vec<Option<u32>> = vec![None; tgt.vertex_count()];
        for (v, &t) in self.vertex_map.iter().enumerate() {
            match fiber_label[t.index()] {
                None => fiber_label[t.index()] = Some(labels[v]),
                Some(l) if l != labels[v] => return Err(ContractionDefect::DisconnectedFiber(t)),
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// Contracts every component of the spanning subgraph with edge set
/// `r_edges` to a single vertex. Target vertices are ordered by the smallest
/// source vertex in each component; target edges follow source edge order.
/// Edges outside `r_edges` whose ends fall in one component are dropped.
pub fn contract(g: &Multigraph, r_edges: &[EdgeId]) -> Result<ContractionMap, GraphError> {
    let mut in_r = vec![false; g.edge_count()];
    for &e in r_edges {
        g.check_edge(e)?;
        in_r[e.index()] = true;
    }
    let (labels, count) = g.component_labels(|e| in_r[e.index()]);
    let vertex_map: Vec<VertexId> = labels.iter().map(|&l| VertexId(l)).collect();
    let mut ends = Vec::new();
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for (_, [a, b]) in g.edges() {
        let (fa, fb) = (vertex_map[a.index()], vertex_map[b.index()]);
        if fa == fb {
            edge_map.push(None);
        } else {
            edge_map.push(Some(EdgeId(ends.len() as u32)));
            ends.push([fa, fb]);
        }
    }
    let target = Multigraph::from_endpoints(count, ends)?;
    Ok(ContractionMap {
        source: g.clone(),
        target,
        vertex_map,
        edge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::isomorphic;

    fn cycle(n: u32) -> Multigraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    fn path(n: u32) -> Multigraph {
        let edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn subdivide_k2_gives_p3() {
        let s = subdivide(&path(2), EdgeId(0)).unwrap();
        assert!(isomorphic(&s.graph, &path(3)).unwrap());
        assert_eq!(s.graph.deg(s.new_vertex), 2);
        assert_eq!(s.renumbering.edge(EdgeId(0)), None);
    }

    #[test]
    fn subdivide_triangle_gives_c4() {
        let s = subdivide(&cycle(3), EdgeId(1)).unwrap();
        assert!(isomorphic(&s.graph, &cycle(4)).unwrap());
        assert_eq!(s.renumbering.edge(EdgeId(2)), Some(EdgeId(1)));
    }

    #[test]
    fn subdivide_loop_gives_double_edge() {
        let g = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        let s = subdivide(&g, EdgeId(0)).unwrap();
        // degree accounting: the loop vertex keeps degree 2, the new vertex has 2
        assert_eq!(s.graph.deg(VertexId(0)), 2);
        assert_eq!(s.graph.deg(s.new_vertex), 2);
        assert_eq!(s.graph.multiplicity(VertexId(0), s.new_vertex), 2);
        assert!(!s.graph.has_loops());
    }

    #[test]
    fn subdivide_unknown_edge() {
        assert_eq!(
            subdivide(&path(2), EdgeId(3)).unwrap_err(),
            GraphError::UnknownEdge(EdgeId(3))
        );
    }

    #[test]
    fn suppress_examples() {
        let s = suppress(&path(3), VertexId(1)).unwrap();
        assert_eq!(s.graph.vertex_count(), 2);
        assert_eq!(s.graph.edge_count(), 1);

        let s = suppress(&cycle(3), VertexId(0)).unwrap();
        assert_eq!(s.graph.vertex_count(), 2);
        assert_eq!(s.graph.multiplicity(VertexId(0), VertexId(1)), 2);

        // v with both edges to the same neighbour becomes a loop there
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 2)]).unwrap();
        let s = suppress(&g, VertexId(1)).unwrap();
        assert_eq!(s.graph.vertex_count(), 2);
        assert!(s.graph.is_loop(s.merged_edge));
        assert_eq!(s.graph.deg(VertexId(0)), 3);
        assert_eq!(s.graph.degree_sum(), 2 * s.graph.edge_count());
    }

    #[test]
    fn suppress_errors() {
        let claw = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            suppress(&claw, VertexId(0)).unwrap_err(),
            GraphError::NotDegreeTwo {
                vertex: VertexId(0),
                degree: 3
            }
        );
        let looped = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(
            suppress(&looped, VertexId(0)).unwrap_err(),
            GraphError::LoopAtVertex(VertexId(0))
        );
    }

    #[test]
    fn contract_examples() {
        let c4 = cycle(4);
        let id = contract(&c4, &[]).unwrap();
        assert!(isomorphic(&id.target, &c4).unwrap());
        assert_eq!(id.edge_map.iter().flatten().count(), 4);
        id.validate().unwrap();

        let all: Vec<EdgeId> = c4.edge_ids().collect();
        let point = contract(&c4, &all).unwrap();
        assert_eq!(point.target.vertex_count(), 1);
        assert_eq!(point.target.edge_count(), 0);
        point.validate().unwrap();

        let one = contract(&c4, &[EdgeId(0)]).unwrap();
        assert!(isomorphic(&one.target, &cycle(3)).unwrap());
        one.validate().unwrap();
    }

    #[test]
    fn validate_flags_disconnected_fiber() {
        let p = path(3);
        let mut m = contract(&p, &[EdgeId(0)]).unwrap();
        // put vertex 2 into the fiber of vertex 0 without a collapsed edge
        m.vertex_map = vec![VertexId(0), VertexId(0), VertexId(0)];
        m.target = Multigraph::empty(1);
        m.edge_map = vec![None, None];
        assert_eq!(m.validate(), Ok(()));
        let broken = ContractionMap {
            source: Multigraph::from_edges(3, &[(0, 1)]).unwrap(),
            target: Multigraph::empty(1),
            vertex_map: vec![VertexId(0); 3],
            edge_map: vec![None],
        };
        assert_eq!(
            broken.validate(),
            Err(ContractionDefect::DisconnectedFiber(VertexId(0)))
        );
    }
}
