//! Exhaustive labeled enumeration, canonical forms for small multigraphs,
//! and random generators for the property corpora.

use std::collections::HashSet;

use hamconn_core::invariants::{is_essentially_k_edge_connected, is_k_edge_connected};
use hamconn_core::multigraph::{Multigraph, SimpleGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

/// Largest `n` for exhaustive labeled enumeration (`2^21` graphs).
pub const MAX_ENUMERATION_N: usize = 7;

/// Largest vertex count [`canonical_form`] accepts.
pub const MAX_CANONICAL_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(
        "labeled enumeration supports n <= {MAX_ENUMERATION_N}, got {0}; use an external corpus"
    )]
    TooLarge(usize),
}

/// Pairs `(i, j)`, `i < j`, in graph6 bit order.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Number of labeled simple graphs on `n` vertices.
pub fn labeled_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// The labeled graph whose edge set is `mask` over [`pair_order`].
pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    let mut adj = vec![0u64; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    SimpleGraph::from_adjacency(&adj).expect("n is small")
}

/// Every labeled simple graph on `n` vertices, in mask order.
pub fn enumerate_labeled(n: usize) -> Result<impl Iterator<Item = SimpleGraph>, EnumerationError> {
    if n > MAX_ENUMERATION_N {
        return Err(EnumerationError::TooLarge(n));
    }
    let pairs = pair_order(n);
    Ok((0..labeled_count(n)).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

/// A labeling-independent key: the lexicographically least sorted edge
/// list over all vertex orders compatible with a degree-based colouring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

fn refine(g: &Multigraph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut colour: Vec<u64> = g
        .vertices()
        .map(|v| (g.deg(v) as u64) << 32 | g.loop_count(v) as u64)
        .collect();
    for _ in 0..n {
        let mut sig: Vec<(u64, Vec<(u64, usize)>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<(u64, usize)> = g
                    .neighbors(v)
                    .into_iter()
                    .map(|w| (colour[w.index()], g.multiplicity(v, w)))
                    .collect();
                nb.sort_unstable();
                (colour[v.index()], nb)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u64> = sig
            .drain(..)
            .map(|s| distinct.binary_search(&s).expect("present") as u64)
            .collect();
        let stable = {
            let mut a = colour.clone();
            a.sort_unstable();
            a.dedup();
            a.len() == distinct.len()
        };
        colour = next;
        if stable {
            break;
        }
    }
    colour
}

/// Canonical form of a multigraph with at most [`MAX_CANONICAL_N`] vertices.
pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let n = g.vertex_count();
    assert!(
        n <= MAX_CANONICAL_N,
        "canonical form supports at most {MAX_CANONICAL_N} vertices"
    );
    let colour = refine(g);
    let mut classes: Vec<u64> = colour.clone();
    classes.sort_unstable();
    classes.dedup();
    // vertices grouped by colour; positions are assigned class by class
    let groups: Vec<Vec<usize>> = classes
        .iter()
        .map(|&c| (0..n).filter(|&v| colour[v] == c).collect())
        .collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(_, [a, b])| (a.index(), b.index()))
        .collect();
    let mut label = vec![0u32; n];
    let mut best: Option<Vec<(u32, u32)>> = None;
    let mut scratch = Vec::with_capacity(edges.len());
    let mut groups = groups;
    permute_groups(&mut groups, 0, &mut |groups: &[Vec<usize>]| {
        let mut pos = 0u32;
        for grp in groups {
            for &v in grp {
                label[v] = pos;
                pos += 1;
            }
        }
        scratch.clear();
        scratch.extend(edges.iter().map(|&(a, b)| {
            let (x, y) = (label[a], label[b]);
            (x.min(y), x.max(y))
        }));
        scratch.sort_unstable();
        if best.as_ref().is_none_or(|b| scratch < *b) {
            best = Some(scratch.clone());
        }
    });
    CanonicalForm {
        n,
        edges: best.unwrap_or_default(),
    }
}

/// Calls `visit` for every combination of orders within each group.
fn permute_groups(groups: &mut [Vec<usize>], at: usize, visit: &mut impl FnMut(&[Vec<usize>])) {
    if at == groups.len() {
        visit(groups);
        return;
    }
    let len = groups[at].len();
    heap_permute(groups, at, len, visit);
}

fn heap_permute(
    groups: &mut [Vec<usize>],
    at: usize,
    k: usize,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if k <= 1 {
        permute_groups(groups, at + 1, visit);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(groups, at, k - 1, visit);
        if k.is_multiple_of(2) {
            groups[at].swap(i, k - 1);
        } else {
            groups[at].swap(0, k - 1);
        }
    }
    heap_permute(groups, at, k - 1, visit);
}

/// One representative per isomorphism class of connected simple graphs on `n` vertices.
pub fn unlabeled_connected(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= MAX_CANONICAL_N.min(MAX_ENUMERATION_N));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in enumerate_labeled(n).expect("n checked") {
        if n > 0 && g.is_connected() && seen.insert(canonical_form(g.as_multigraph())) {
            out.push(g);
        }
    }
    out
}

/// Connected loopless multigraphs with at most `max_n` vertices, between
/// `min_m` and `max_m` edges and edge multiplicities up to `max_mult`, one
/// per isomorphism class.
pub fn small_multigraphs(
    max_n: usize,
    min_m: usize,
    max_m: usize,
    max_mult: usize,
) -> Vec<Multigraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 1..=max_n {
        for g in unlabeled_connected(n) {
            let base = g.as_multigraph().edge_list();
            let mut edges = Vec::with_capacity(max_m);
            let mut visit = |edges: &[(u32, u32)]| {
                if edges.len() >= min_m {
                    let h = Multigraph::from_edges(n, edges).expect("valid endpoints");
                    if seen.insert(canonical_form(&h)) {
                        out.push(h);
                    }
                }
            };
            with_multiplicities(&base, 0, max_m, max_mult, &mut edges, &mut visit);
        }
    }
    out
}

/// Every edge list using each of `base[i..]` between 1 and `max_mult` times, total at most `max_m`.
fn with_multiplicities(
    base: &[(u32, u32)],
    i: usize,
    max_m: usize,
    max_mult: usize,
    edges: &mut Vec<(u32, u32)>,
    visit: &mut impl FnMut(&[(u32, u32)]),
) {
    if i == base.len() {
        visit(edges);
        return;
    }
    let len = edges.len();
    for k in 1..=max_mult {
        // every later edge needs at least one copy
        if len + k + (base.len() - i - 1) > max_m {
            break;
        }
        edges.extend(std::iter::repeat_n(base[i], k));
        with_multiplicities(base, i + 1, max_m, max_mult, edges, visit);
        edges.truncate(len);
    }
}

/// A uniformly random loopless multigraph with `n` vertices and `m` edges.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    assert!(n >= 2 || m == 0);
    let edges: Vec<(u32, u32)> = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n as u32);
            let mut b = rng.gen_range(0..n as u32 - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    Multigraph::from_edges(n, &edges).expect("valid endpoints")
}

/// A random multigraph with loops allowed.
pub fn random_multigraph_with_loops<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    let edges: Vec<(u32, u32)> = (0..m)
        .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
        .collect();
    Multigraph::from_edges(n, &edges).expect("valid endpoints")
}

/// A random 3-edge-connected loopless multigraph with `4..=8` vertices and
/// at most `max_edges` edges, by rejection.
pub fn random_three_edge_connected<R: Rng>(rng: &mut R, max_edges: usize) -> Multigraph {
    let top = (2 * max_edges / 3).min(8);
    assert!(
        top >= 4,
        "too few edges for a 3-edge-connected graph on 4 vertices"
    );
    loop {
        let n = rng.gen_range(4..=top);
        let lo = (3 * n).div_ceil(2);
        let m = rng.gen_range(lo..=max_edges);
        let h = random_multigraph(rng, n, m);
        if is_k_edge_connected(&h, 3) {
            return h;
        }
    }
}

/// A random essentially 3-edge-connected multigraph: a 3-edge-connected
/// base with random subdivisions and pendant edges, kept only if the
/// result is still essentially 3-edge-connected.
pub fn random_essentially_three_edge_connected<R: Rng>(
    rng: &mut R,
    max_base_edges: usize,
) -> Multigraph {
    loop {
        let base = random_three_edge_connected(rng, max_base_edges);
        let mut n = base.vertex_count() as u32;
        let mut edges = base.edge_list();
        let subdivisions = rng.gen_range(0..=2);
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.shuffle(rng);
        for &i in order.iter().take(subdivisions) {
            let (a, b) = edges[i];
            edges[i] = (a, n);
            edges.push((n, b));
            n += 1;
        }
        let pendants = rng.gen_range(0..=4);
        let base_n = base.vertex_count() as u32;
        for _ in 0..pendants {
            let at = rng.gen_range(0..base_n);
            edges.push((at, n));
            n += 1;
        }
        let h = Multigraph::from_edges(n as usize, &edges).expect("valid endpoints");
        if is_essentially_k_edge_connected(&h, 3).unwrap_or(false) {
            return h;
        }
    }
}
