//! Named graphs: the Petersen graph, the Wagner graph, the pendant-extended
//! Wagner family, and checking of contraction certificates onto Petersen.

use thiserror::Error;

use crate::linegraph::line_graph;
use crate::multigraph::{
    isomorphism, ContractionDefect, ContractionMap, EdgeId, Multigraph, SimpleGraph, VertexId,
};

/// Petersen graph: outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::from_edges(10, &edges).expect("petersen is simple")
}

/// Wagner graph as the circulant `C8(1, 4)`: the 8-cycle plus its four diameters.
pub fn wagner() -> SimpleGraph {
    let mut edges = Vec::with_capacity(12);
    for i in 0..8u32 {
        edges.push((i, (i + 1) % 8));
    }
    for i in 0..4u32 {
        edges.push((i, i + 4));
    }
    SimpleGraph::from_edges(8, &edges).expect("wagner is simple")
}

/// `W` with `pendants_per_vertex` pendant edges at each of its vertices.
#[derive(Debug, Clone)]
pub struct WagnerCounterexample {
    /// `W` plus pendants; edges `0..12` are the Wagner edges.
    pub h: Multigraph,
    /// `L(h)`; vertex `i` is edge `i` of `h`.
    pub g: SimpleGraph,
}

pub fn wagner_counterexample(pendants_per_vertex: usize) -> WagnerCounterexample {
    assert!(pendants_per_vertex >= 1, "at least one pendant per vertex");
    let w = wagner();
    let mut edges = w.as_multigraph().edge_list();
    let mut next = 8u32;
    for v in 0..8u32 {
        for _ in 0..pendants_per_vertex {
            edges.push((v, next));
            next += 1;
        }
    }
    let h = Multigraph::from_edges(next as usize, &edges).expect("valid endpoints");
    let g = line_graph(&h).expect("small enough").target;
    WagnerCounterexample { h, g }
}

/// Certificate that `a` and `e` cannot be covered by one closed trail:
/// a contraction onto the Petersen graph sending `e` to an edge `xy` and
/// `a` onto the other eight vertices.
#[derive(Debug, Clone)]
pub struct PetersenWitness {
    pub map: ContractionMap,
    pub e: EdgeId,
    pub a: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessFailure {
    #[error("not a contraction: {0}")]
    Contraction(#[from] ContractionDefect),
    #[error("contraction target is not the Petersen graph")]
    TargetNotPetersen,
    #[error("edge {0} is not in the source graph")]
    UnknownEdge(EdgeId),
    #[error("edge {0} collapses inside a fiber")]
    EdgeCollapsed(EdgeId),
    #[error("a vertex of the prescribed set is not in the source graph")]
    UnknownVertex,
    #[error("image of the prescribed set is not the complement of the image edge")]
    WrongImage,
}

/// Checks every clause of a [`PetersenWitness`].
pub fn verify_petersen_witness(w: &PetersenWitness) -> Result<(), WitnessFailure> {
    w.map.validate()?;
    let target = &w.map.target;
    if target.has_loops()
        || isomorphism(target, petersen().as_multigraph())
            .ok()
            .flatten()
            .is_none()
    {
        return Err(WitnessFailure::TargetNotPetersen);
    }
    if !w.map.source.has_edge(w.e) {
        return Err(WitnessFailure::UnknownEdge(w.e));
    }
    let image_edge = w.map.edge_map[w.e.index()].ok_or(WitnessFailure::EdgeCollapsed(w.e))?;
    let [x, y] = target.endpoints(image_edge);
    let mut image: Vec<VertexId> = Vec::with_capacity(w.a.len());
    for &v in &w.a {
        image.push(
            *w.map
                .vertex_map
                .get(v.index())
                .ok_or(WitnessFailure::UnknownVertex)?,
        );
    }
    image.sort_unstable();
    image.dedup();
    let expected: Vec<VertexId> = target.vertices().filter(|&v| v != x && v != y).collect();
    if image != expected {
        return Err(WitnessFailure::WrongImage);
    }
    Ok(())
}

/// The identity contraction of the Petersen graph with `e = xy` and the
/// remaining eight vertices as the prescribed set.
pub fn petersen_identity_witness(e: EdgeId) -> PetersenWitness {
    let p = petersen().into_multigraph();
    let [x, y] = p.endpoints(e);
    let a = p.vertices().filter(|&v| v != x && v != y).collect();
    let map = ContractionMap {
        vertex_map: p.vertices().collect(),
        edge_map: p.edge_ids().map(Some).collect(),
        target: p.clone(),
        source: p,
    };
    PetersenWitness { map, e, a }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{contract, isomorphic};

    #[test]
    fn petersen_fingerprint() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        // Kneser graph KG(5,2): 2-subsets of {0..5} adjacent when disjoint
        let subsets: Vec<(u32, u32)> = (0..5u32)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in subsets.iter().enumerate() {
            for (j, &(c, d)) in subsets.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        let kneser = Multigraph::from_edges(10, &edges).unwrap();
        assert!(isomorphic(p.as_multigraph(), &kneser).unwrap());
    }

    #[test]
    fn wagner_fingerprint() {
        let w = wagner();
        assert_eq!(w.vertex_count(), 8);
        assert_eq!(w.edge_count(), 12);
        assert!(w.vertices().all(|v| w.degree(v) == 3));
        assert!(!isomorphic(w.as_multigraph(), &{
            // the cube is the other well-known cubic graph on 8 vertices
            let edges: Vec<(u32, u32)> = (0..8u32)
                .flat_map(|v| [1u32, 2, 4].into_iter().map(move |b| (v, v ^ b)))
                .filter(|&(a, b)| a < b)
                .collect();
            Multigraph::from_edges(8, &edges).unwrap()
        })
        .unwrap());
    }

    #[test]
    fn counterexample_sizes() {
        let c = wagner_counterexample(1);
        assert_eq!(c.h.edge_count(), 20);
        assert_eq!(c.g.vertex_count(), 20);
        let c2 = wagner_counterexample(2);
        assert_eq!(c2.g.vertex_count(), 28);
    }

    #[test]
    fn identity_witness_verifies() {
        for e in petersen().as_multigraph().edge_ids() {
            assert_eq!(
                verify_petersen_witness(&petersen_identity_witness(e)),
                Ok(())
            );
        }
    }

    #[test]
    fn witness_failures() {
        let mut w = petersen_identity_witness(EdgeId(0));
        w.a.pop();
        assert_eq!(verify_petersen_witness(&w), Err(WitnessFailure::WrongImage));

        // a fiber {0, 2} with no collapsed edge between them
        let p = petersen().into_multigraph();
        let m = contract(&p, &[]).unwrap();
        let mut bad = m.clone();
        bad.vertex_map[2] = VertexId(0);
        let w = PetersenWitness {
            map: bad,
            e: EdgeId(0),
            a: vec![],
        };
        assert!(matches!(
            verify_petersen_witness(&w),
            Err(WitnessFailure::Contraction(_))
        ));

        // a genuine contraction whose target is not Petersen
        let squashed = contract(&p, &[EdgeId(0)]).unwrap();
        let w = PetersenWitness {
            map: squashed,
            e: EdgeId(1),
            a: vec![],
        };
        assert_eq!(
            verify_petersen_witness(&w),
            Err(WitnessFailure::TargetNotPetersen)
        );
    }
}
