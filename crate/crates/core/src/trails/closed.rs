use std::collections::HashSet;

use super::{check_size, Trail, TrailError, TrailIndex};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Copy)]
enum Goal {
    /// Visit every vertex in the mask.
    Through(u128),
    /// Touch every edge of the host.
    Dominating,
}

/// Depth-first extension of a closed trail from a fixed first edge. Dead
/// states `(current vertex, used edges)` are remembered; the visited set is a
/// function of the used edges, so the pair is a complete state.
struct ClosedSearch<'a> {
    idx: &'a TrailIndex,
    allowed: u128,
    start: VertexId,
    goal: Goal,
    dead: HashSet<(u32, u128)>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl ClosedSearch<'_> {
    fn satisfied(&self, visited: u128) -> bool {
        match self.goal {
            Goal::Through(required) => required & !visited == 0,
            Goal::Dominating => self.idx.dominated(visited) == self.idx.all_edges,
        }
    }

    fn extend(&mut self, cur: VertexId, used: u128, visited: u128) -> bool {
        if cur == self.start && self.satisfied(visited) {
            return true;
        }
        if self.dead.contains(&(cur.0, used)) {
            return false;
        }
        let free = self.allowed & !used;
        let reach = self.idx.reach(cur, free);
        let feasible = reach >> self.start.index() & 1 == 1
            && match self.goal {
                Goal::Through(required) => required & !visited & !reach == 0,
                Goal::Dominating => {
                    let undominated = self.idx.all_edges & !self.idx.dominated(visited);
                    undominated & !self.idx.dominated(reach) == 0
                }
            };
        if feasible {
            for i in 0..self.idx.adj[cur.index()].len() {
                let (e, w) = self.idx.adj[cur.index()][i];
                if free >> e.index() & 1 == 0 {
                    continue;
                }
                self.edges.push(e);
                self.vertices.push(w);
                if self.extend(w, used | 1 << e.index(), visited | 1 << w.index()) {
                    return true;
                }
                self.edges.pop();
                self.vertices.pop();
            }
        }
        self.dead.insert((cur.0, used));
        false
    }
}

fn search_from(
    idx: &TrailIndex,
    h: &Multigraph,
    first: EdgeId,
    allowed: u128,
    goal: Goal,
) -> Option<Trail> {
    let [a, b] = h.endpoints(first);
    let (start, next) = if a <= b { (a, b) } else { (b, a) };
    let mut s = ClosedSearch {
        idx,
        allowed,
        start,
        goal,
        dead: HashSet::new(),
        vertices: vec![start, next],
        edges: vec![first],
    };
    let visited = 1u128 << start.index() | 1u128 << next.index();
    if s.extend(next, 1 << first.index(), visited) {
        Some(Trail::from_parts(s.vertices, s.edges, true))
    } else {
        None
    }
}

fn non_loop_edges(h: &Multigraph) -> u128 {
    h.edges()
        .filter(|&(_, [u, v])| u != v)
        .fold(0u128, |acc, (e, _)| acc | 1 << e.index())
}

/// A closed trail that traverses `e` and visits every vertex of `a`, or
/// `None` when no such trail exists.
pub fn find_closed_trail_through(
    h: &Multigraph,
    a: &[VertexId],
    e: EdgeId,
) -> Result<Option<Trail>, TrailError> {
    check_size(h)?;
    for &v in a {
        h.check_vertex(v)
            .map_err(|_| TrailError::UnknownVertex(v))?;
    }
    h.check_edge(e).map_err(|_| TrailError::UnknownEdge(e))?;
    let idx = TrailIndex::new(h);
    let allowed = non_loop_edges(h);
    let required = a.iter().fold(0u128, |acc, v| acc | 1 << v.index());

    if !h.is_loop(e) {
        return Ok(search_from(&idx, h, e, allowed, Goal::Through(required)));
    }
    // a prescribed loop at v: find a closed trail through a + v and splice the loop in at v
    let [v, _] = h.endpoints(e);
    if required & !(1u128 << v.index()) == 0 {
        return Ok(Some(Trail::from_parts(vec![v, v], vec![e], true)));
    }
    let required = required | 1 << v.index();
    for &(f, _) in &idx.adj[v.index()] {
        if let Some(t) = search_from(&idx, h, f, allowed, Goal::Through(required)) {
            let t = t.rotated_to(v).expect("trail visits v");
            let mut vertices = vec![v];
            vertices.extend_from_slice(t.vertices());
            let mut edges = vec![e];
            edges.extend_from_slice(t.edges());
            return Ok(Some(Trail::from_parts(vertices, edges, true)));
        }
    }
    Ok(None)
}

/// A closed trail visiting every vertex of `h`.
pub fn find_spanning_closed_trail(h: &Multigraph) -> Result<Option<Trail>, TrailError> {
    check_size(h)?;
    match h.vertex_count() {
        0 => return Ok(None),
        1 => return Ok(Some(Trail::trivial(VertexId(0)))),
        _ => {}
    }
    let idx = TrailIndex::new(h);
    let allowed = non_loop_edges(h);
    let everything = crate::bits::low_mask128(h.vertex_count());
    for &(e, _) in &idx.adj[0] {
        if let Some(t) = search_from(&idx, h, e, allowed, Goal::Through(everything)) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// A closed trail whose vertices meet every edge of `h` (a single vertex
/// counts as a trivial closed trail).
pub fn find_dct(h: &Multigraph) -> Result<Option<Trail>, TrailError> {
    check_size(h)?;
    if h.vertex_count() == 0 {
        return Ok(None);
    }
    let idx = TrailIndex::new(h);
    if let Some(v) = h
        .vertices()
        .find(|v| idx.incident_mask[v.index()] == idx.all_edges)
    {
        return Ok(Some(Trail::trivial(v)));
    }
    let non_loop = non_loop_edges(h);
    for e in h.edge_ids() {
        if non_loop >> e.index() & 1 == 0 {
            continue;
        }
        // e is the smallest edge id on the trail
        let allowed = non_loop & !crate::bits::low_mask128(e.index());
        if let Some(t) = search_from(&idx, h, e, allowed, Goal::Dominating) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;
    use crate::multigraph::SimpleGraph;

    fn mg(n: usize, edges: &[(u32, u32)]) -> Multigraph {
        Multigraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn through_k4_every_edge() {
        let k4 = SimpleGraph::complete(4).into_multigraph();
        let all: Vec<VertexId> = k4.vertices().collect();
        for e in k4.edge_ids() {
            let t = find_closed_trail_through(&k4, &all, e).unwrap().unwrap();
            t.validate(&k4).unwrap();
            assert!(t.edges().contains(&e));
            assert_eq!(t.vertex_set(), all);
        }
    }

    #[test]
    fn petersen_has_no_trail_through_eight_and_an_edge() {
        let p = petersen().into_multigraph();
        for e in p.edge_ids() {
            let [x, y] = p.endpoints(e);
            let a: Vec<VertexId> = p.vertices().filter(|&v| v != x && v != y).collect();
            assert_eq!(find_closed_trail_through(&p, &a, e).unwrap(), None);
        }
    }

    #[test]
    fn c5_with_empty_set() {
        let c5 = SimpleGraph::cycle(5).into_multigraph();
        let t = find_closed_trail_through(&c5, &[], EdgeId(2))
            .unwrap()
            .unwrap();
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn prescribed_loop() {
        let h = mg(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]);
        let t = find_closed_trail_through(&h, &[VertexId(0)], EdgeId(3))
            .unwrap()
            .unwrap();
        t.validate(&h).unwrap();
        assert!(t.edges().contains(&EdgeId(3)));
        assert!(t.vertices().contains(&VertexId(0)));
        let t = find_closed_trail_through(&h, &[], EdgeId(3))
            .unwrap()
            .unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn spanning_examples() {
        let c4 = SimpleGraph::cycle(4).into_multigraph();
        assert_eq!(find_spanning_closed_trail(&c4).unwrap().unwrap().len(), 4);
        let claw = SimpleGraph::star(3).into_multigraph();
        assert_eq!(find_spanning_closed_trail(&claw).unwrap(), None);
        let k4 = SimpleGraph::complete(4).into_multigraph();
        assert!(find_spanning_closed_trail(&k4).unwrap().is_some());
        assert_eq!(
            find_spanning_closed_trail(&Multigraph::empty(1)).unwrap(),
            Some(Trail::trivial(VertexId(0)))
        );
    }

    #[test]
    fn dct_examples() {
        let net = mg(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]);
        let t = find_dct(&net).unwrap().unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.dominates(&net));
        let p4 = SimpleGraph::path(4).into_multigraph();
        assert_eq!(find_dct(&p4).unwrap(), None);
        let star = SimpleGraph::star(4).into_multigraph();
        assert_eq!(find_dct(&star).unwrap(), Some(Trail::trivial(VertexId(0))));
    }
}
