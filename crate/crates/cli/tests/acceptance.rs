//! End-to-end acceptance criteria, run without the test harness so that
//! each criterion prints one PASS/FAIL line. Exits nonzero on any broken
//! criterion. A criterion whose statement no implementation can meet is
//! printed as FAIL with the reason and a verified witness, and does not
//! fail the run.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use hamconn::commands::{counterexample, k4_plus_pendants};
use hamconn::enumerate::{
    random_essentially_three_edge_connected, random_multigraph, random_three_edge_connected,
    small_multigraphs, unlabeled_connected,
};
use hamconn::formats::{read_corpus, Format};
use hamconn::harness::{classify, verify_enumeration, Hypothesis, Outcome};
use hamconn_core::constructions::{
    petersen, petersen_identity_witness, verify_petersen_witness, wagner_counterexample,
};
use hamconn_core::coremap::{core_of, core_with_order, lift_closed_trail};
use hamconn_core::invariants::{has_dominating_set, is_k_edge_connected, simplicial_vertices};
use hamconn_core::linegraph::{is_line_graph_of_multigraph, line_graph, pendant_edges, preimage};
use hamconn_core::multigraph::{isomorphic, EdgeId, Multigraph, SimpleGraph, VertexId};
use hamconn_core::reduction::{check_hamiltonian_path, Pipeline, PipelineError};
use hamconn_core::trails::{
    find_closed_trail_through, find_dct, find_idt, find_spanning_closed_trail, hamiltonian_path,
    is_hamiltonian,
};

/// Largest labeled enumeration bound.
const ENUMERATION_N: usize = 7;
/// Runtime budgets.
const BUDGET_COUNTEREXAMPLE: Duration = Duration::from_secs(120);
const BUDGET_THEOREM: Duration = Duration::from_secs(15 * 60);
const BUDGET_DCT: Duration = Duration::from_secs(10 * 60);
const BUDGET_IDT: Duration = Duration::from_secs(30 * 60);
/// Multigraph corpus for the trail equivalences.
const CORPUS_MAX_N: usize = 6;
const CORPUS_MIN_M: usize = 3;
const CORPUS_MAX_M: usize = 9;
const CORPUS_MAX_MULT: usize = 3;
/// Random-suite sizes and seeds.
const TRAIL_GRAPHS: usize = 500;
const TRAIL_MAX_EDGES: usize = 12;
const TRAIL_MAX_A: usize = 7;
const TRAIL_SETS_PER_GRAPH: usize = 64;
const PREIMAGE_GRAPHS: usize = 1000;
const PREIMAGE_MAX_EDGES: usize = 12;
const CORE_GRAPHS: usize = 500;
const CORE_SHUFFLES: usize = 10;
const CORE_MAX_BASE_EDGES: usize = 12;
const SEED_TRAILS: u64 = 0x7261_696c;
const SEED_PREIMAGE: u64 = 0x7072_6569;
const SEED_CORE: u64 = 0x636f_7265;

type Verdict = Result<String, String>;

#[derive(Debug)]
enum Failure {
    Broken(String),
    /// The criterion contradicts a verified counterexample.
    Unattainable(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Broken(s)
    }
}

fn broken(e: impl std::fmt::Display) -> Failure {
    Failure::Broken(e.to_string())
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |k| k.get())
}

fn within(budget: Duration, start: Instant, detail: String) -> Verdict {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{detail} in {t:.1?}"))
    } else {
        Err(format!("{detail} but took {t:.1?} (budget {budget:?})"))
    }
}

fn c1_counterexample() -> Verdict {
    let start = Instant::now();
    let r = counterexample(1);
    let p = &r.props;
    if r.g.vertex_count() != 20 {
        return Err(format!("g has {} vertices", r.g.vertex_count()));
    }
    if !p.claw_free() || p.connectivity < 3 || p.domination != Some(4) {
        return Err(format!(
            "claw-free {}, connectivity {}, domination {:?}",
            p.claw_free(),
            p.connectivity,
            p.domination
        ));
    }
    let Some((a, b)) = p.failing_pair else {
        return Err("g is hamiltonian-connected".into());
    };
    // independent recheck of the failing pair
    if hamiltonian_path(&r.g, a, b)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return Err(format!("pair {} {} has a hamiltonian path", a.0, b.0));
    }
    // the shipped fixture is the same graph
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/wagner_pendants.el"
    );
    let recs = read_corpus(fixture.as_ref(), Format::EdgeList).map_err(|e| e.to_string())?;
    if recs.len() != 1 || !isomorphic(&recs[0].graph, &r.h).unwrap_or(false) {
        return Err("fixture differs from the construction".into());
    }
    within(
        BUDGET_COUNTEREXAMPLE,
        start,
        format!(
            "|V| = 20, claw-free, connectivity {}, domination 4, no path {} - {}",
            p.connectivity, a.0, b.0
        ),
    )
}

fn theorem(hyp: Hypothesis) -> Verdict {
    let start = Instant::now();
    let k = workers();
    let r = verify_enumeration(ENUMERATION_N, hyp, k).map_err(|e| e.to_string())?;
    if !r.counts.is_monotone() {
        return Err(format!("stage counts not monotone: {:?}", r.counts));
    }
    // 2^0 + 2^1 + 2^3 + 2^6 + 2^10 + 2^15 + 2^21
    if r.counts.total != 2_131_019 {
        return Err(format!("enumerated {} graphs", r.counts.total));
    }
    if !r.violations.is_empty() {
        return Err(format!(
            "{} violations, first {}",
            r.violations.len(),
            r.violations[0]
        ));
    }
    within(
        BUDGET_THEOREM,
        start,
        format!(
            "{} graphs, {} satisfy the hypotheses, 0 violations, {k} workers",
            r.counts.total, r.counts.dominated
        ),
    )
}

fn multigraph_corpus() -> Vec<Multigraph> {
    small_multigraphs(CORPUS_MAX_N, CORPUS_MIN_M, CORPUS_MAX_M, CORPUS_MAX_MULT)
}

fn c4_dct(corpus: &[Multigraph]) -> Verdict {
    let start = Instant::now();
    let mut hamiltonian = 0;
    for h in corpus {
        let g = line_graph(h).map_err(|e| e.to_string())?.target;
        let ham = is_hamiltonian(&g).map_err(|e| e.to_string())?;
        let dct = find_dct(h).map_err(|e| e.to_string())?;
        if let Some(t) = &dct {
            if !t.is_closed() || !t.dominates(h) || t.validate(h).is_err() {
                return Err(format!("invalid DCT for {:?}", h.edge_list()));
            }
        }
        if ham != dct.is_some() {
            return Err(format!(
                "hamiltonian {ham}, DCT {} for {:?}",
                dct.is_some(),
                h.edge_list()
            ));
        }
        hamiltonian += ham as usize;
    }
    within(
        BUDGET_DCT,
        start,
        format!(
            "{} multigraphs, {hamiltonian} with hamiltonian line graph",
            corpus.len()
        ),
    )
}

fn c5_idt(corpus: &[Multigraph]) -> Verdict {
    let start = Instant::now();
    let (mut pairs, mut present) = (0usize, 0usize);
    for h in corpus {
        let lgm = line_graph(h).map_err(|e| e.to_string())?;
        for e1 in h.edge_ids() {
            for e2 in h.edge_ids().filter(|&e| e != e1) {
                let path = hamiltonian_path(&lgm.target, lgm.vertex_of(e1), lgm.vertex_of(e2))
                    .map_err(|e| e.to_string())?
                    .is_some();
                let idt = find_idt(h, e1, e2).map_err(|e| e.to_string())?;
                if let Some(w) = &idt {
                    if w.validate(h).is_err() || w.first_edge != e1 || w.last_edge != e2 {
                        return Err(format!(
                            "invalid IDT for {:?} ({}, {})",
                            h.edge_list(),
                            e1.0,
                            e2.0
                        ));
                    }
                }
                if path != idt.is_some() {
                    return Err(format!(
                        "path {path}, IDT {} for {:?} ({}, {})",
                        idt.is_some(),
                        h.edge_list(),
                        e1.0,
                        e2.0
                    ));
                }
                pairs += 1;
                present += path as usize;
            }
        }
    }
    within(
        BUDGET_IDT,
        start,
        format!("{pairs} ordered edge pairs (exhaustive), {present} with a hamiltonian path"),
    )
}

/// Every vertex set of size at most `TRAIL_MAX_A`, or a seeded sample of them.
fn vertex_sets(n: usize, rng: &mut StdRng) -> Vec<Vec<VertexId>> {
    let all: Vec<Vec<VertexId>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= TRAIL_MAX_A)
        .map(|m| {
            (0..n as u32)
                .filter(|&i| m >> i & 1 == 1)
                .map(VertexId)
                .collect()
        })
        .collect();
    if all.len() <= TRAIL_SETS_PER_GRAPH {
        return all;
    }
    all.choose_multiple(rng, TRAIL_SETS_PER_GRAPH)
        .cloned()
        .collect()
}

fn c6_closed_trails() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED_TRAILS);
    let mut calls = 0usize;
    for i in 0..TRAIL_GRAPHS {
        let h = random_three_edge_connected(&mut rng, TRAIL_MAX_EDGES);
        let sets = vertex_sets(h.vertex_count(), &mut rng);
        for a in &sets {
            for e in h.edge_ids() {
                let t = find_closed_trail_through(&h, a, e).map_err(|e| e.to_string())?;
                let ok = t.is_some_and(|t| {
                    let vs = t.vertex_set();
                    t.is_closed()
                        && t.validate(&h).is_ok()
                        && t.edges().contains(&e)
                        && a.iter().all(|v| vs.contains(v))
                });
                if !ok {
                    return Err(format!(
                        "graph {i} {:?}: no trail through {a:?} and edge {}",
                        h.edge_list(),
                        e.0
                    ));
                }
                calls += 1;
            }
        }
    }
    Ok(format!(
        "{TRAIL_GRAPHS} graphs, {calls} (A, e) cases, at most {TRAIL_SETS_PER_GRAPH} sets per graph, seed {SEED_TRAILS:#x}"
    ))
}

fn c7_petersen() -> Verdict {
    let p = petersen().into_multigraph();
    let mut ok = 0;
    for e in p.edge_ids() {
        let [x, y] = p.endpoints(e);
        let a: Vec<VertexId> = p.vertices().filter(|&v| v != x && v != y).collect();
        if find_closed_trail_through(&p, &a, e)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            return Err(format!("trail found for edge {}", e.0));
        }
        verify_petersen_witness(&petersen_identity_witness(e))
            .map_err(|f| format!("edge {}: {f}", e.0))?;
        ok += 1;
    }
    Ok(format!(
        "{ok}/15 edges: no trail, identity witness verifies"
    ))
}

fn relabel(g: &SimpleGraph, perm: &[u32]) -> SimpleGraph {
    let edges: Vec<(u32, u32)> = g
        .as_multigraph()
        .edge_list()
        .into_iter()
        .map(|(u, v)| (perm[u as usize], perm[v as usize]))
        .collect();
    SimpleGraph::from_edges(g.vertex_count(), &edges).expect("relabeling keeps the graph simple")
}

/// Simplicial vertices of `L(h)` as edges of `h`.
fn simplicial_edges(g: &SimpleGraph) -> BTreeSet<EdgeId> {
    simplicial_vertices(g)
        .into_iter()
        .map(|v| EdgeId(v.0))
        .collect()
}

/// Preimage checks on one line graph.
#[derive(Debug, Default)]
struct PreimageTally {
    /// `h` has the pendant normalization but the preimage is not isomorphic to it.
    not_unique: Vec<Vec<(u32, u32)>>,
    /// A relabeled copy of `g` produced a valid but non-isomorphic preimage.
    label_dependent: usize,
}

/// Roundtrip and bijection must hold; uniqueness and labeling independence
/// are tallied. `expected` is `h` when it already has the pendant normalization.
fn check_preimage(
    g: &SimpleGraph,
    expected: Option<&Multigraph>,
    rng: &mut StdRng,
    tally: &mut PreimageTally,
) -> Result<(), String> {
    let p = preimage(g).map_err(|e| e.to_string())?;
    if line_graph(&p)
        .map_err(|e| e.to_string())?
        .target
        .adjacency()
        != g.adjacency()
    {
        return Err("line graph of the preimage differs".into());
    }
    if simplicial_edges(g) != pendant_edges(&p).into_iter().collect() {
        return Err("simplicial vertices do not match pendant edges".into());
    }
    if let Some(h) = expected {
        if !isomorphic(&p, h).unwrap_or(false) {
            tally.not_unique.push(h.edge_list());
        }
    }
    let mut perm: Vec<u32> = (0..g.vertex_count() as u32).collect();
    perm.shuffle(rng);
    let g2 = relabel(g, &perm);
    let q = preimage(&g2).map_err(|e| e.to_string())?;
    if line_graph(&q)
        .map_err(|e| e.to_string())?
        .target
        .adjacency()
        != g2.adjacency()
        || simplicial_edges(&g2) != pendant_edges(&q).into_iter().collect()
    {
        return Err("preimage of a relabeled copy is invalid".into());
    }
    // both are valid normalized preimages of the same graph
    if !isomorphic(&p, &q).unwrap_or(false) {
        tally.label_dependent += 1;
    }
    Ok(())
}

/// Two pendant-free multigraphs with one line graph and no simplicial vertex.
fn uniqueness_counterexample() -> Result<(Multigraph, Multigraph), String> {
    let a = Multigraph::from_edges(4, &[(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 3), (2, 3)])
        .expect("valid");
    let b = Multigraph::from_edges(4, &[(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (1, 3), (2, 3)])
        .expect("valid");
    let la = line_graph(&a).map_err(|e| e.to_string())?.target;
    let lb = line_graph(&b).map_err(|e| e.to_string())?.target;
    let distinct = !isomorphic(&a, &b).unwrap_or(true);
    let normalized = simplicial_vertices(&la).is_empty()
        && pendant_edges(&a).is_empty()
        && pendant_edges(&b).is_empty();
    if la == lb && distinct && normalized {
        Ok((a, b))
    } else {
        Err("uniqueness counterexample no longer holds".into())
    }
}

fn c8_preimage() -> Result<String, Failure> {
    let mut rng = StdRng::seed_from_u64(SEED_PREIMAGE);
    let mut tally = PreimageTally::default();
    let mut normalized = 0;
    let mut done = 0;
    while done < PREIMAGE_GRAPHS {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(1..=PREIMAGE_MAX_EDGES);
        let h = random_multigraph(&mut rng, n, m);
        if !h.is_connected() {
            continue;
        }
        let g = line_graph(&h).map_err(broken)?.target;
        let has_normal_form = simplicial_edges(&g) == pendant_edges(&h).into_iter().collect();
        normalized += has_normal_form as usize;
        check_preimage(&g, has_normal_form.then_some(&h), &mut rng, &mut tally)
            .map_err(|e| broken(format!("{:?}: {e}", h.edge_list())))?;
        done += 1;
    }
    let star = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).expect("valid");
    let pet = petersen().into_multigraph();
    let ce = wagner_counterexample(1);
    let fixtures: [(&str, SimpleGraph, Multigraph); 3] = [
        ("K3", SimpleGraph::complete(3), star),
        ("L(Petersen)", line_graph(&pet).map_err(broken)?.target, pet),
        ("counterexample", ce.g, ce.h),
    ];
    let mut fixture_tally = PreimageTally::default();
    for (name, g, h) in &fixtures {
        check_preimage(g, Some(h), &mut rng, &mut fixture_tally)
            .map_err(|e| broken(format!("{name}: {e}")))?;
    }
    if !fixture_tally.not_unique.is_empty() || fixture_tally.label_dependent > 0 {
        return Err(broken(format!("fixture mismatch: {fixture_tally:?}")));
    }
    let summary = format!(
        "{PREIMAGE_GRAPHS} random multigraphs ({normalized} already normalized) and 3 fixtures, seed {SEED_PREIMAGE:#x}: \
         roundtrip L(preimage(g)) = g and simplicial-pendant bijection hold everywhere"
    );
    if tally.not_unique.is_empty() && tally.label_dependent == 0 {
        return Ok(summary);
    }
    let (a, b) = uniqueness_counterexample().map_err(broken)?;
    Err(Failure::Unattainable(format!(
        "{summary}; preimage differs from a normalized source in {} cases and a relabeling gives another valid \
         preimage in {} (first {:?}). No function of g can meet this: {:?} and {:?} are non-isomorphic, pendant-free, and have \
         the same line graph without simplicial vertices",
        tally.not_unique.len(),
        tally.label_dependent,
        tally.not_unique.first(),
        a.edge_list(),
        b.edge_list()
    )))
}

/// Runs every pair through one pipeline and revalidates each path.
fn all_pairs_pipeline(g: &SimpleGraph) -> Result<usize, String> {
    let d = has_dominating_set(g, 3).ok_or("no dominating set of size 3")?;
    let p = Pipeline::new(g, &d).map_err(|e| e.to_string())?;
    let n = g.vertex_count() as u32;
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (u, v) = (VertexId(a), VertexId(b));
            let path = p.ham_path(u, v).map_err(|e| match e {
                PipelineError::LiftFailed { .. } => format!("LiftFailed for {a} {b}: {e}"),
                _ => format!("{a} {b}: {e}"),
            })?;
            check_hamiltonian_path(g, &path, u, v).map_err(|e| format!("{a} {b}: {e}"))?;
            count += 1;
        }
    }
    Ok(count)
}

fn c9_pipeline() -> Verdict {
    let (mut graphs, mut pairs) = (0usize, 0usize);
    for n in 1..=ENUMERATION_N {
        for g in unlabeled_connected(n) {
            if !matches!(
                classify(&g, Hypothesis::Dom3),
                Outcome::Holds | Outcome::Violated(_)
            ) {
                continue;
            }
            if !is_line_graph_of_multigraph(&g) {
                continue;
            }
            pairs += all_pairs_pipeline(&g)
                .map_err(|e| format!("{:?}: {e}", g.as_multigraph().edge_list()))?;
            graphs += 1;
        }
    }
    for (name, h) in [
        ("L(K4)", SimpleGraph::complete(4).into_multigraph()),
        ("L(K4+pendants)", k4_plus_pendants()),
    ] {
        let g = line_graph(&h).map_err(|e| e.to_string())?.target;
        pairs += all_pairs_pipeline(&g).map_err(|e| format!("{name}: {e}"))?;
        graphs += 1;
    }
    Ok(format!(
        "{graphs} graphs (up to isomorphism) and {pairs} ordered pairs, 0 LiftFailed"
    ))
}

fn c10_core() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED_CORE);
    let mut lifted = 0;
    for i in 0..CORE_GRAPHS {
        let h = random_essentially_three_edge_connected(&mut rng, CORE_MAX_BASE_EDGES);
        let fail = |what: &str| format!("graph {i} {:?}: {what}", h.edge_list());
        let cm = core_of(&h).map_err(|e| fail(&e.to_string()))?;
        let mut order: Vec<VertexId> = h.vertices().collect();
        for _ in 0..CORE_SHUFFLES {
            order.shuffle(&mut rng);
            let other = core_with_order(&h, &order).map_err(|e| fail(&e.to_string()))?;
            if other.removed_pendants != cm.removed_pendants
                || !isomorphic(&other.core, &cm.core).unwrap_or(false)
            {
                return Err(fail("core depends on the processing order"));
            }
        }
        if !is_k_edge_connected(&cm.core, 3) {
            return Err(fail("core is not 3-edge-connected"));
        }
        if let Some(t) = find_spanning_closed_trail(&cm.core).map_err(|e| fail(&e.to_string()))? {
            let l = lift_closed_trail(&cm, &t).map_err(|e| fail(&e.to_string()))?;
            if !l.is_closed() || l.validate(&h).is_err() || !l.dominates(&h) {
                return Err(fail("lifted trail is not a dominating closed trail"));
            }
            lifted += 1;
        }
    }
    Ok(format!(
        "{CORE_GRAPHS} graphs x {CORE_SHUFFLES} orders, {lifted} spanning closed trails lifted, seed {SEED_CORE:#x}"
    ))
}

fn report(
    id: usize,
    name: &str,
    f: impl FnOnce() -> Result<String, Failure>,
) -> Result<(), Failure> {
    let start = Instant::now();
    let v = f();
    let t = start.elapsed();
    match &v {
        Ok(d) => println!("PASS {id:>2} {name}: {d} [{t:.1?}]"),
        Err(Failure::Broken(d)) => println!("FAIL {id:>2} {name}: {d} [{t:.1?}]"),
        Err(Failure::Unattainable(d)) => {
            println!("FAIL {id:>2} {name} (unattainable as stated): {d} [{t:.1?}]")
        }
    }
    v.map(|_| ())
}

fn main() -> ExitCode {
    let corpus = multigraph_corpus();
    let results = [
        report(1, "sharpness counterexample", || Ok(c1_counterexample()?)),
        report(
            2,
            "domination-3 hamiltonian-connectivity on all graphs up to 7 vertices",
            || Ok(theorem(Hypothesis::Dom3)?),
        ),
        report(
            3,
            "domination-2 hamiltonicity on all graphs up to 7 vertices",
            || Ok(theorem(Hypothesis::Dom2)?),
        ),
        report(
            4,
            "hamiltonian line graph iff dominating closed trail",
            || Ok(c4_dct(&corpus)?),
        ),
        report(
            5,
            "hamiltonian path iff internally dominating trail",
            || Ok(c5_idt(&corpus)?),
        ),
        report(
            6,
            "closed trail through at most 7 vertices and an edge",
            || Ok(c6_closed_trails()?),
        ),
        report(7, "Petersen dichotomy", || Ok(c7_petersen()?)),
        report(
            8,
            "preimage roundtrip and simplicial-pendant bijection",
            c8_preimage,
        ),
        report(9, "pipeline completeness", || Ok(c9_pipeline()?)),
        report(10, "core properties", || Ok(c10_core()?)),
    ];
    let broken: Vec<usize> = (1..=10)
        .filter(|&i| matches!(results[i - 1], Err(Failure::Broken(_))))
        .collect();
    if broken.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("broken criteria: {broken:?}");
        ExitCode::FAILURE
    }
}
