use std::collections::HashSet;

use super::{check_size, IdtWitness, Trail, TrailError, TrailIndex};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// Extends `v0 -e1- v1 ...` until the last edge can be taken. The interior
/// set is determined by `(current, used)` once `v0` is fixed, so dead states
/// are memoised on that pair.
struct IdtSearch<'a> {
    h: &'a Multigraph,
    idx: &'a TrailIndex,
    last: EdgeId,
    allowed: u128,
    dead: HashSet<(u32, u128)>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl IdtSearch<'_> {
    fn extend(&mut self, cur: VertexId, used: u128, interior: u128) -> bool {
        let last_bit = 1u128 << self.last.index();
        let dominated = self.idx.dominated(interior);
        if self.h.is_incident(self.last, cur) && dominated == self.idx.all_edges {
            let end = self.h.opposite(self.last, cur);
            self.edges.push(self.last);
            self.vertices.push(end);
            return true;
        }
        if self.dead.contains(&(cur.0, used)) {
            return false;
        }
        let free = self.allowed & !used & !last_bit;
        let reach = self.idx.reach(cur, free);
        let [x, y] = self.h.endpoints(self.last);
        let feasible = (reach >> x.index() & 1 == 1 || reach >> y.index() & 1 == 1)
            && (self.idx.all_edges & !dominated) & !self.idx.dominated(reach) == 0;
        if feasible {
            for i in 0..self.idx.adj[cur.index()].len() {
                let (e, w) = self.idx.adj[cur.index()][i];
                if free >> e.index() & 1 == 0 {
                    continue;
                }
                self.edges.push(e);
                self.vertices.push(w);
                if self.extend(w, used | 1 << e.index(), interior | 1 << w.index()) {
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

/// An open trail starting with `e1`, ending with `e2`, whose interior
/// vertices dominate every edge of `h`; `None` after exhaustive search.
pub fn find_idt(h: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<Option<IdtWitness>, TrailError> {
    check_size(h)?;
    h.check_edge(e1).map_err(|_| TrailError::UnknownEdge(e1))?;
    h.check_edge(e2).map_err(|_| TrailError::UnknownEdge(e2))?;
    if e1 == e2 {
        return Err(TrailError::SameTerminalEdges);
    }
    let idx = TrailIndex::new(h);
    let allowed = h
        .edges()
        .filter(|&(_, [u, v])| u != v)
        .fold(0u128, |acc, (e, _)| acc | 1 << e.index());
    let [a, b] = h.endpoints(e1);
    let orientations: &[(VertexId, VertexId)] = if a == b { &[(a, a)] } else { &[(a, b), (b, a)] };
    for &(v0, v1) in orientations {
        let mut s = IdtSearch {
            h,
            idx: &idx,
            last: e2,
            allowed,
            dead: HashSet::new(),
            vertices: vec![v0, v1],
            edges: vec![e1],
        };
        if s.extend(v1, 1 << e1.index(), 1 << v1.index()) {
            let trail = Trail::from_parts(s.vertices, s.edges, false);
            let w = IdtWitness::new(h, trail).expect("search produces valid witnesses");
            return Ok(Some(w));
        }
    }
    Ok(None)
}
