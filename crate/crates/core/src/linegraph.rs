//! Line graphs of multigraphs and their normalised preimages.
//!
//! [`preimage`] reconstructs a multigraph `H` with `L(H) = G` by placing the
//! vertices of `G` one at a time (breadth-first) as edges of `H`, checking
//! every placement against all earlier ones. Simplicial vertices of `G` are
//! forced to become pendant edges, which removes the small-graph ambiguities
//! (`K_3 = L(K_3) = L(K_{1,3})`, `K_n` as a star or as a bundle of parallel
//! edges) and makes the result unique up to isomorphism.

use thiserror::Error;

use crate::bits;
use crate::invariants::{find_claw, is_simplicial, Claw};
use crate::multigraph::{
    EdgeId, GraphError, Multigraph, SimpleGraph, VertexId, MAX_SIMPLE_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineGraphError {
    #[error("graph is not the line graph of a multigraph{}", match .claw {
        Some(c) => format!(" (induced claw centred at {})", c.center),
        None => String::new(),
    })]
    NotALineGraphOfMultigraph { claw: Option<Claw> },
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `target = L(source)`; vertex `i` of the target is edge `i` of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraphMap {
    pub source: Multigraph,
    pub target: SimpleGraph,
}

impl LineGraphMap {
    #[inline]
    pub fn vertex_of(&self, e: EdgeId) -> VertexId {
        VertexId(e.0)
    }

    #[inline]
    pub fn edge_of(&self, v: VertexId) -> EdgeId {
        EdgeId(v.0)
    }
}

/// Line graph of `h`. Parallel edges are adjacent once; a loop at `v` is
/// adjacent to every other edge at `v`.
pub fn line_graph(h: &Multigraph) -> Result<LineGraphMap, GraphError> {
    let m = h.edge_count();
    if m > MAX_SIMPLE_VERTICES {
        return Err(GraphError::TooLarge {
            limit: MAX_SIMPLE_VERTICES,
            actual: m,
        });
    }
    let mut at = vec![0u64; h.vertex_count()];
    for (e, [u, v]) in h.edges() {
        at[u.index()] |= 1 << e.index();
        at[v.index()] |= 1 << e.index();
    }
    let adj: Vec<u64> = h
        .edges()
        .map(|(e, [u, v])| (at[u.index()] | at[v.index()]) & !(1 << e.index()))
        .collect();
    Ok(LineGraphMap {
        source: h.clone(),
        target: SimpleGraph::from_adjacency(&adj)?,
    })
}

/// The multigraph `H` with `L(H) = g` in which exactly the simplicial
/// vertices of `g` are pendant edges. Edge `i` of `H` is vertex `i` of `g`,
/// so `line_graph(&preimage(g)?)` reproduces the adjacency of `g` exactly.
/// Never produces loops.
pub fn preimage(g: &SimpleGraph) -> Result<Multigraph, LineGraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Multigraph::empty(0));
    }
    if !g.is_connected() {
        return Err(LineGraphError::Disconnected);
    }
    let order = bfs_order(g);
    let mut parent = vec![usize::MAX; n];
    let mut placed_before = 0u64;
    for &w in &order {
        if placed_before != 0 {
            parent[w] = order
                .iter()
                .copied()
                .find(|&u| placed_before >> u & 1 == 1 && g.adj(w) >> u & 1 == 1)
                .expect("bfs order keeps a placed neighbour");
        }
        placed_before |= 1 << w;
    }
    let simplicial: Vec<bool> = (0..n).map(|v| is_simplicial(g, v)).collect();
    let mut search = Placement {
        g,
        order: &order,
        parent: &parent,
        simplicial: &simplicial,
        ends: vec![[u32::MAX; 2]; n],
        at: Vec::with_capacity(2 * n),
        private: Vec::with_capacity(2 * n),
        placed: 0,
    };
    if !search.place(0) {
        return Err(LineGraphError::NotALineGraphOfMultigraph { claw: find_claw(g) });
    }
    let h = Multigraph::from_edges(
        search.at.len(),
        &search.ends.iter().map(|&[a, b]| (a, b)).collect::<Vec<_>>(),
    )?;
    debug_assert_eq!(
        line_graph(&h).map(|l| l.target.adjacency().to_vec()).ok(),
        Some(g.adjacency().to_vec())
    );
    Ok(h)
}

pub fn is_line_graph_of_multigraph(g: &SimpleGraph) -> bool {
    preimage(g).is_ok()
}

fn bfs_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    // start from a vertex of maximum degree: its edge is the most constrained
    let start = (0..n)
        .max_by_key(|&v| (g.adj(v).count_ones(), std::cmp::Reverse(v)))
        .unwrap_or(0);
    let mut order = vec![start];
    let mut seen = 1u64 << start;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in bits::ones(g.adj(v) & !seen) {
            seen |= 1 << w;
            order.push(w);
        }
        i += 1;
    }
    order
}

struct Placement<'a> {
    g: &'a SimpleGraph,
    order: &'a [usize],
    parent: &'a [usize],
    simplicial: &'a [bool],
    /// H-endpoints of each placed G-vertex.
    ends: Vec<[u32; 2]>,
    /// For every H-vertex, the placed G-vertices whose edge touches it.
    at: Vec<u64>,
    /// H-vertices that are the degree-1 end of a pendant edge.
    private: Vec<bool>,
    placed: u64,
}

impl Placement<'_> {
    fn fresh(&mut self, private: bool) -> u32 {
        self.at.push(0);
        self.private.push(private);
        (self.at.len() - 1) as u32
    }

    fn drop_fresh(&mut self) {
        self.at.pop();
        self.private.pop();
    }

    fn fits(&self, w: usize, p: u32, q: Option<u32>) -> bool {
        let touching = self.at[p as usize] | q.map_or(0, |q| self.at[q as usize]);
        touching & self.placed == self.g.adj(w) & self.placed
    }

    fn commit(&mut self, w: usize, p: u32, q: u32) {
        self.ends[w] = [p, q];
        self.at[p as usize] |= 1 << w;
        self.at[q as usize] |= 1 << w;
        self.placed |= 1 << w;
    }

    fn uncommit(&mut self, w: usize, p: u32, q: u32) {
        self.at[p as usize] &= !(1 << w);
        self.at[q as usize] &= !(1 << w);
        self.placed &= !(1 << w);
    }

    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let w = self.order[depth];
        let simplicial = self.simplicial[w];

        if depth == 0 {
            let p = self.fresh(false);
            let q = self.fresh(simplicial);
            self.commit(w, p, q);
            if self.place(1) {
                return true;
            }
            self.uncommit(w, p, q);
            self.drop_fresh();
            self.drop_fresh();
            return false;
        }

        let [a, b] = self.ends[self.parent[w]];
        let mut shared: Vec<u32> = [a, b]
            .into_iter()
            .filter(|&x| !self.private[x as usize])
            .collect();
        shared.dedup();
        let mut tried: Vec<(u32, u32)> = Vec::new();
        for p in shared {
            // second endpoint: a fresh vertex (private when w is simplicial)
            if self.fits(w, p, None) {
                let q = self.fresh(simplicial);
                self.commit(w, p, q);
                if self.place(depth + 1) {
                    return true;
                }
                self.uncommit(w, p, q);
                self.drop_fresh();
            }
            if simplicial {
                continue;
            }
            // or an existing shared vertex
            for q in 0..self.at.len() as u32 {
                if q == p || self.private[q as usize] {
                    continue;
                }
                let key = (p.min(q), p.max(q));
                if tried.contains(&key) || !self.fits(w, p, Some(q)) {
                    continue;
                }
                tried.push(key);
                self.commit(w, p, q);
                if self.place(depth + 1) {
                    return true;
                }
                self.uncommit(w, p, q);
            }
        }
        false
    }
}

/// Edges of `h` with an endpoint of degree one.
pub fn pendant_edges(h: &Multigraph) -> Vec<EdgeId> {
    h.edges()
        .filter(|&(_, [u, v])| u != v && (h.deg(u) == 1 || h.deg(v) == 1))
        .map(|(e, _)| e)
        .collect()
}
