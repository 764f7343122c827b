//! The reports behind the CLI subcommands: property tables, the pipeline
//! trace and the sharpness counterexample.

use std::fmt;

use hamconn_core::constructions::{petersen, wagner, wagner_counterexample};
use hamconn_core::invariants::{
    find_claw, is_essentially_k_edge_connected, minimum_dominating_set, vertex_connectivity, Claw,
};
use hamconn_core::linegraph::{line_graph, pendant_edges, preimage};
use hamconn_core::multigraph::{EdgeId, Multigraph, SimpleGraph, VertexId};
use hamconn_core::reduction::{
    check_hamiltonian_path, idt_from_trail, idt_to_ham_path, Pipeline, PipelineError,
};
use hamconn_core::trails::{find_non_hamiltonian_pair, is_hamiltonian, Trail};

use crate::formats::{encode_edgelist, encode_graph6};

/// Graphs selectable by name.
pub const NAMED: [&str; 6] = [
    "k4",
    "octahedron",
    "petersen",
    "wagner",
    "l-k4-pendants",
    "counterexample",
];

pub fn named(name: &str) -> Option<SimpleGraph> {
    let g = match name {
        "k4" => SimpleGraph::complete(4),
        "octahedron" => {
            line_graph(&SimpleGraph::complete(4).into_multigraph())
                .ok()?
                .target
        }
        "petersen" => petersen(),
        "wagner" => wagner(),
        "l-k4-pendants" => line_graph(&k4_plus_pendants()).ok()?.target,
        "counterexample" => wagner_counterexample(1).g,
        _ => return None,
    };
    Some(g)
}

/// `K4` with one pendant edge at each vertex.
pub fn k4_plus_pendants() -> Multigraph {
    let mut edges = SimpleGraph::complete(4).as_multigraph().edge_list();
    edges.extend((0..4u32).map(|v| (v, v + 4)));
    Multigraph::from_edges(8, &edges).expect("valid endpoints")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageSummary {
    pub vertices: usize,
    pub edges: usize,
    pub pendant_edges: usize,
    pub essentially_3_edge_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropsTable {
    pub vertices: usize,
    pub edges: usize,
    /// `None` when claw-free.
    pub claw: Option<Claw>,
    pub connectivity: usize,
    /// `None` for the empty graph.
    pub domination: Option<usize>,
    pub dominating_set: Vec<VertexId>,
    /// `None` below three vertices.
    pub hamiltonian: Option<bool>,
    /// First pair without a hamiltonian path.
    pub failing_pair: Option<(VertexId, VertexId)>,
    /// `None` when the graph is not a line graph of a multigraph.
    pub preimage: Option<PreimageSummary>,
}

impl PropsTable {
    pub fn claw_free(&self) -> bool {
        self.claw.is_none()
    }

    pub fn hamiltonian_connected(&self) -> bool {
        self.failing_pair.is_none()
    }
}

pub fn props(g: &SimpleGraph) -> PropsTable {
    let mds = minimum_dominating_set(g).ok();
    let preimage = preimage(g).ok().map(|h| PreimageSummary {
        vertices: h.vertex_count(),
        edges: h.edge_count(),
        pendant_edges: pendant_edges(&h).len(),
        essentially_3_edge_connected: is_essentially_k_edge_connected(&h, 3).unwrap_or(false),
    });
    PropsTable {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        claw: find_claw(g),
        connectivity: vertex_connectivity(g),
        domination: mds.as_ref().map(|d| d.len()),
        dominating_set: mds.map(|d| d.vertices).unwrap_or_default(),
        hamiltonian: is_hamiltonian(g).ok(),
        failing_pair: find_non_hamiltonian_pair(g),
        preimage,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ids(vs: &[VertexId]) -> String {
    vs.iter()
        .map(|v| v.0.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for PropsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices                {}", self.vertices)?;
        writeln!(f, "edges                   {}", self.edges)?;
        match self.claw {
            None => writeln!(f, "claw-free               yes")?,
            Some(c) => writeln!(
                f,
                "claw-free               no (centre {}, leaves {})",
                c.center.0,
                ids(&c.leaves)
            )?,
        }
        writeln!(f, "connectivity            {}", self.connectivity)?;
        match self.domination {
            Some(d) => writeln!(
                f,
                "domination number       {d} ({})",
                ids(&self.dominating_set)
            )?,
            None => writeln!(f, "domination number       undefined")?,
        }
        match self.hamiltonian {
            Some(h) => writeln!(f, "hamiltonian             {}", yes_no(h))?,
            None => writeln!(f, "hamiltonian             undefined")?,
        }
        match self.failing_pair {
            None => writeln!(f, "hamiltonian-connected   yes")?,
            Some((a, b)) => writeln!(f, "hamiltonian-connected   no (no path {} - {})", a.0, b.0)?,
        }
        match &self.preimage {
            None => write!(f, "line-graph preimage     none"),
            Some(p) => write!(
                f,
                "line-graph preimage     {} vertices, {} edges, {} pendant, essentially 3-edge-connected: {}",
                p.vertices,
                p.edges,
                p.pendant_edges,
                yes_no(p.essentially_3_edge_connected)
            ),
        }
    }
}

/// The pendant-extended Wagner graph `h`, its line graph `g` and the table of `g`.
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub pendants: usize,
    pub h: Multigraph,
    pub g: SimpleGraph,
    pub props: PropsTable,
}

impl CounterexampleReport {
    /// 3-connected and claw-free, with domination number 4 and a failing pair.
    pub fn is_sharp(&self) -> bool {
        self.props.claw_free()
            && self.props.connectivity >= 3
            && self.props.domination == Some(4)
            && !self.props.hamiltonian_connected()
    }
}

pub fn counterexample(pendants: usize) -> CounterexampleReport {
    let c = wagner_counterexample(pendants);
    let props = props(&c.g);
    CounterexampleReport {
        pendants,
        h: c.h,
        g: c.g,
        props,
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# Wagner graph with {} pendant edge(s) per vertex",
            self.pendants
        )?;
        writeln!(f, "# h (edgelist)")?;
        write!(f, "{}", encode_edgelist(&self.h))?;
        writeln!(f, "# g = L(h) (graph6)")?;
        writeln!(f, "{}", encode_graph6(&self.g))?;
        writeln!(f, "# g = L(h) (edgelist)")?;
        write!(f, "{}", encode_edgelist(self.g.as_multigraph()))?;
        writeln!(f, "# properties of g")?;
        writeln!(f, "{}", self.props)?;
        write!(f, "sharp                   {}", yes_no(self.is_sharp()))
    }
}

/// A hamiltonian `u`-`v` path with the artifacts it was built from.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub u: VertexId,
    pub v: VertexId,
    pub dominating_set: Vec<VertexId>,
    /// Projections of the terminal edges; `None` for a star preimage.
    pub e0: Option<(EdgeId, EdgeId)>,
    /// Size of the chosen core vertex set.
    pub z: usize,
    /// Length of the closed trail in the extended core.
    pub trail_len: usize,
    pub idt_len: usize,
    pub path: Trail,
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}:", self.u.0, self.v.0)?;
        write!(f, " D = [{}]", ids(&self.dominating_set))?;
        match self.e0 {
            Some((a, b)) => write!(f, " e0 = ({}, {})", a.0, b.0)?,
            None => write!(f, " e0 = star")?,
        }
        write!(
            f,
            " |z| = {} trail = {} idt = {}",
            self.z, self.trail_len, self.idt_len
        )?;
        write!(f, " path = {}", ids(self.path.vertices()))
    }
}

/// Runs the reduction for one pair, using a minimum dominating set of `g`.
pub fn run_pipeline(
    p: &Pipeline,
    d: &[VertexId],
    u: VertexId,
    v: VertexId,
) -> Result<PipelineReport, PipelineError> {
    let g = &p.lgm.target;
    let (e0, z, trail_len, w) = match p.context(u, v)? {
        Some(ctx) => {
            let t = ctx.closed_trail()?;
            let w = idt_from_trail(&ctx, &t)?;
            (Some((ctx.e0_1, ctx.e0_2)), ctx.z.len(), t.len(), w)
        }
        None => (None, 0, 0, p.idt(u, v)?),
    };
    let path = idt_to_ham_path(&p.lgm, &w)?;
    check_hamiltonian_path(g, &path, u, v).map_err(|detail| PipelineError::LiftFailed {
        stage: hamconn_core::reduction::Stage::HamiltonianPath,
        detail: detail.to_string(),
    })?;
    Ok(PipelineReport {
        u,
        v,
        dominating_set: d.to_vec(),
        e0,
        z,
        trail_len,
        idt_len: w.trail.len(),
        path,
    })
}

/// Builds the shared pipeline state from a minimum dominating set.
pub fn prepare_pipeline(g: &SimpleGraph) -> Result<(Pipeline, Vec<VertexId>), PipelineError> {
    let d = minimum_dominating_set(g).map_err(|_| PipelineError::BadDominatingSet)?;
    let p = Pipeline::new(g, &d)?;
    Ok((p, d.vertices))
}

/// A pipeline failure and the pair it occurred at (`None` before any pair).
pub type PairFailure = (Option<(VertexId, VertexId)>, PipelineError);

/// Every pair `u < v`, stopping at the first failure.
pub fn run_pipeline_all_pairs(g: &SimpleGraph) -> Result<Vec<PipelineReport>, PairFailure> {
    let (p, d) = prepare_pipeline(g).map_err(|e| (None, e))?;
    let n = g.vertex_count() as u32;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (u, v) = (VertexId(a), VertexId(b));
            out.push(run_pipeline(&p, &d, u, v).map_err(|e| (Some((u, v)), e))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hamconn_core::reduction::Stage;

    #[test]
    fn named_graphs_exist() {
        for name in NAMED {
            assert!(named(name).is_some(), "{name}");
        }
        assert!(named("nope").is_none());
        assert_eq!(named("octahedron").unwrap().edge_count(), 12);
    }

    #[test]
    fn props_of_k4() {
        let t = props(&SimpleGraph::complete(4));
        assert!(t.claw_free());
        assert_eq!(t.connectivity, 3);
        assert_eq!(t.domination, Some(1));
        assert_eq!(t.hamiltonian, Some(true));
        assert!(t.hamiltonian_connected());
        let pre = t.preimage.unwrap();
        assert_eq!((pre.vertices, pre.edges, pre.pendant_edges), (5, 4, 4));
    }

    #[test]
    fn props_of_petersen() {
        let t = props(&petersen());
        assert!(!t.claw_free());
        assert_eq!(t.connectivity, 3);
        assert_eq!(t.domination, Some(3));
        assert_eq!(t.hamiltonian, Some(false));
        assert!(!t.hamiltonian_connected());
        assert!(t.preimage.is_none());
    }

    #[test]
    fn pipeline_on_octahedron_all_pairs() {
        let g = named("octahedron").unwrap();
        let reports = run_pipeline_all_pairs(&g).unwrap();
        assert_eq!(reports.len(), 15);
        assert!(reports
            .iter()
            .all(|r| r.path.vertices().len() == 6 && r.e0.is_some()));
    }

    #[test]
    fn pipeline_rejects_claw() {
        let (_, e) = run_pipeline_all_pairs(&SimpleGraph::star(3)).unwrap_err();
        assert_eq!(e.stage(), Stage::Preimage);
    }

    #[test]
    fn pipeline_on_complete_graph_uses_star() {
        let reports = run_pipeline_all_pairs(&SimpleGraph::complete(5)).unwrap();
        assert_eq!(reports.len(), 10);
        assert!(reports.iter().all(|r| r.e0.is_none()));
    }
}
