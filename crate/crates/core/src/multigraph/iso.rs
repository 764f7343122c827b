//! Backtracking isomorphism for small multigraphs.
//!
//! Candidates are restricted by a colour refinement computed jointly on both
//! graphs, then extended vertex by vertex while checking edge multiplicities
//! against every vertex already placed.

use std::collections::HashMap;

use super::{GraphError, Multigraph, VertexId};

/// Largest vertex count accepted by [`isomorphism`].
pub const DEFAULT_ISO_LIMIT: usize = 32;

/// `true` iff a multiplicity-preserving vertex bijection exists.
pub fn isomorphic(a: &Multigraph, b: &Multigraph) -> Result<bool, GraphError> {
    Ok(isomorphism(a, b)?.is_some())
}

/// A bijection `map` with `mult_a(u, v) == mult_b(map[u], map[v])` for all
/// vertex pairs (loops included), or `None`.
pub fn isomorphism(a: &Multigraph, b: &Multigraph) -> Result<Option<Vec<VertexId>>, GraphError> {
    isomorphism_with_limit(a, b, DEFAULT_ISO_LIMIT)
}

pub fn isomorphism_with_limit(
    a: &Multigraph,
    b: &Multigraph,
    limit: usize,
) -> Result<Option<Vec<VertexId>>, GraphError> {
    let n = a.vertex_count();
    for g in [a, b] {
        if g.vertex_count() > limit {
            return Err(GraphError::TooLarge {
                limit,
                actual: g.vertex_count(),
            });
        }
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let ma = multiplicity_matrix(a);
    let mb = multiplicity_matrix(b);
    let (ca, cb) = refine(&ma, &mb, n);

    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(None);
    }

    let order = search_order(&ma, &ca, n);
    let mut search = Search {
        n,
        ma: &ma,
        mb: &mb,
        ca: &ca,
        cb: &cb,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        let map = search
            .map
            .iter()
            .map(|&w| VertexId(w as u32))
            .collect::<Vec<_>>();
        debug_assert!(check_bijection(&ma, &mb, &map));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn multiplicity_matrix(g: &Multigraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut m = vec![0u32; n * n];
    for (_, [u, v]) in g.edges() {
        m[u.index() * n + v.index()] += 1;
        if u != v {
            m[v.index() * n + u.index()] += 1;
        }
    }
    m
}

fn check_bijection(ma: &[u32], mb: &[u32], map: &[VertexId]) -> bool {
    let n = map.len();
    (0..n).all(|u| (0..n).all(|v| ma[u * n + v] == mb[map[u].index() * n + map[v].index()]))
}

/// Joint colour refinement; colours are comparable across the two graphs.
fn refine(ma: &[u32], mb: &[u32], n: usize) -> (Vec<u32>, Vec<u32>) {
    let initial = |m: &[u32], v: usize| -> Vec<u32> {
        let degree: u32 = (0..n).map(|w| m[v * n + w]).sum::<u32>() + m[v * n + v];
        vec![degree, m[v * n + v]]
    };
    let mut sigs_a: Vec<Vec<u32>> = (0..n).map(|v| initial(ma, v)).collect();
    let mut sigs_b: Vec<Vec<u32>> = (0..n).map(|v| initial(mb, v)).collect();
    let mut classes = 0;
    loop {
        let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut keys: Vec<&Vec<u32>> = sigs_a.iter().chain(sigs_b.iter()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let id = table.len() as u32;
            table.insert(k.clone(), id);
        }
        let ca: Vec<u32> = sigs_a.iter().map(|s| table[s]).collect();
        let cb: Vec<u32> = sigs_b.iter().map(|s| table[s]).collect();
        if table.len() == classes {
            return (ca, cb);
        }
        classes = table.len();
        let next = |m: &[u32], c: &[u32], v: usize| -> Vec<u32> {
            let mut s = vec![c[v]];
            let mut around: Vec<(u32, u32)> = (0..n)
                .filter(|&w| w != v && m[v * n + w] > 0)
                .map(|w| (c[w], m[v * n + w]))
                .collect();
            around.sort_unstable();
            s.extend(around.into_iter().flat_map(|(x, y)| [x, y]));
            s
        };
        sigs_a = (0..n).map(|v| next(ma, &ca, v)).collect();
        sigs_b = (0..n).map(|v| next(mb, &cb, v)).collect();
    }
}

/// Places rare colours first, then vertices with the most placed neighbours.
fn search_order(m: &[u32], colours: &[u32], n: usize) -> Vec<usize> {
    let mut class_size: HashMap<u32, usize> = HashMap::new();
    for &c in colours {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&colours[v]], v))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for w in 0..n {
            if m[v * n + w] > 0 {
                links[w] += 1;
            }
        }
    }
    order
}

struct Search<'a> {
    n: usize,
    ma: &'a [u32],
    mb: &'a [u32],
    ca: &'a [u32],
    cb: &'a [u32],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let n = self.n;
        let v = self.order[depth];
        for w in 0..n {
            if self.used[w] || self.ca[v] != self.cb[w] || self.ma[v * n + v] != self.mb[w * n + w]
            {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let x = self.map[u];
                self.ma[v * n + u] == self.mb[w * n + x]
            });
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}
