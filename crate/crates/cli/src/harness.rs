//! Filters a corpus through a theorem's hypotheses and checks its
//! conclusion on the survivors.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use hamconn_core::invariants::{has_dominating_set, is_claw_free, is_k_connected};
use hamconn_core::multigraph::{GraphError, SimpleGraph, VertexId};
use hamconn_core::trails::{find_non_hamiltonian_pair, is_hamiltonian};
use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::{
    graph_from_mask, labeled_count, pair_order, EnumerationError, MAX_ENUMERATION_N,
};
use crate::formats::{encode_graph6, CorpusRecord, Origin};

/// Graphs per parallel work unit.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// 3-connected, claw-free, domination number at most 3 ⇒ hamiltonian-connected.
    Dom3,
    /// 2-connected, claw-free, domination number at most 2 ⇒ hamiltonian.
    Dom2,
}

impl Hypothesis {
    pub fn connectivity(self) -> usize {
        match self {
            Hypothesis::Dom3 => 3,
            Hypothesis::Dom2 => 2,
        }
    }

    pub fn domination(self) -> usize {
        match self {
            Hypothesis::Dom3 => 3,
            Hypothesis::Dom2 => 2,
        }
    }

    pub fn conclusion(self) -> &'static str {
        match self {
            Hypothesis::Dom3 => "hamiltonian-connected",
            Hypothesis::Dom2 => "hamiltonian",
        }
    }
}

impl FromStr for Hypothesis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dom3" => Ok(Hypothesis::Dom3),
            "dom2" => Ok(Hypothesis::Dom2),
            _ => Err(format!("unknown hypothesis {s:?} (expected dom3 or dom2)")),
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Dom3 => "dom3",
            Hypothesis::Dom2 => "dom2",
        })
    }
}

/// The last filter a graph passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Disconnected,
    NotKConnected,
    HasClaw,
    NotDominated,
    Holds,
    /// Conclusion fails; the pair has no hamiltonian path (none for hamiltonicity).
    Violated(Option<(VertexId, VertexId)>),
}

pub fn classify(g: &SimpleGraph, hyp: Hypothesis) -> Outcome {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Outcome::Disconnected;
    }
    if !is_k_connected(g, hyp.connectivity()) {
        return Outcome::NotKConnected;
    }
    if !is_claw_free(g) {
        return Outcome::HasClaw;
    }
    if has_dominating_set(g, hyp.domination()).is_none() {
        return Outcome::NotDominated;
    }
    let holds = match hyp {
        Hypothesis::Dom3 => match find_non_hamiltonian_pair(g) {
            None => true,
            Some(pair) => return Outcome::Violated(Some(pair)),
        },
        Hypothesis::Dom2 => is_hamiltonian(g).unwrap_or(false),
    };
    if holds {
        Outcome::Holds
    } else {
        Outcome::Violated(None)
    }
}

/// Graphs surviving each filter, in filter order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StageCounts {
    pub total: u64,
    pub connected: u64,
    pub k_connected: u64,
    pub claw_free: u64,
    pub dominated: u64,
    pub conclusion: u64,
}

impl StageCounts {
    fn record(&mut self, o: Outcome) {
        self.total += 1;
        let depth = match o {
            Outcome::Disconnected => 0,
            Outcome::NotKConnected => 1,
            Outcome::HasClaw => 2,
            Outcome::NotDominated => 3,
            Outcome::Violated(_) => 4,
            Outcome::Holds => 5,
        };
        for (stage, count) in [
            &mut self.connected,
            &mut self.k_connected,
            &mut self.claw_free,
            &mut self.dominated,
            &mut self.conclusion,
        ]
        .into_iter()
        .enumerate()
        {
            if depth > stage {
                *count += 1;
            }
        }
    }

    fn merge(mut self, o: StageCounts) -> StageCounts {
        self.total += o.total;
        self.connected += o.connected;
        self.k_connected += o.k_connected;
        self.claw_free += o.claw_free;
        self.dominated += o.dominated;
        self.conclusion += o.conclusion;
        self
    }

    pub fn is_monotone(&self) -> bool {
        let c = [
            self.total,
            self.connected,
            self.k_connected,
            self.claw_free,
            self.dominated,
            self.conclusion,
        ];
        c.windows(2).all(|w| w[0] >= w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub origin: Origin,
    /// graph6 encoding of the graph.
    pub encoding: String,
    pub pair: Option<(VertexId, VertexId)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encoding)?;
        if let Some((a, b)) = self.pair {
            write!(f, " {} {}", a.0, b.0)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub hypothesis: Hypothesis,
    pub counts: StageCounts,
    /// In input order.
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    /// Ignores timing.
    fn eq(&self, o: &Self) -> bool {
        self.hypothesis == o.hypothesis
            && self.counts == o.counts
            && self.violations == o.violations
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.hypothesis;
        let c = &self.counts;
        writeln!(f, "hypothesis            {h}")?;
        writeln!(f, "total                 {}", c.total)?;
        writeln!(f, "connected             {}", c.connected)?;
        writeln!(
            f,
            "{}-connected           {}",
            h.connectivity(),
            c.k_connected
        )?;
        writeln!(f, "claw-free             {}", c.claw_free)?;
        writeln!(f, "domination <= {}       {}", h.domination(), c.dominated)?;
        writeln!(f, "{:<21} {}", h.conclusion(), c.conclusion)?;
        writeln!(f, "violations            {}", self.violations.len())?;
        write!(f, "elapsed               {:.2?}", self.elapsed)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("{origin}: graph has {n} vertices; simple graphs support at most 64")]
    TooLarge { origin: Origin, n: usize },
    #[error("{origin}: graph has parallel edges or loops")]
    NotSimple { origin: Origin },
    #[error("cannot start a pool of {0} workers")]
    Pool(usize),
}

#[derive(Default)]
struct Partial {
    counts: StageCounts,
    violations: Vec<Violation>,
}

impl Partial {
    fn add(&mut self, g: &SimpleGraph, origin: impl FnOnce() -> Origin, hyp: Hypothesis) {
        let o = classify(g, hyp);
        self.counts.record(o);
        if let Outcome::Violated(pair) = o {
            self.violations.push(Violation {
                origin: origin(),
                encoding: encode_graph6(g),
                pair,
            });
        }
    }

    fn merge(mut self, o: Partial) -> Partial {
        self.counts = self.counts.merge(o.counts);
        self.violations.extend(o.violations);
        self
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|_| HarnessError::Pool(workers))
}

/// Every labeled graph on `1..=max_n` vertices.
pub fn verify_enumeration(
    max_n: usize,
    hyp: Hypothesis,
    workers: usize,
) -> Result<VerificationReport, HarnessError> {
    if max_n > MAX_ENUMERATION_N {
        return Err(EnumerationError::TooLarge(max_n).into());
    }
    let start = Instant::now();
    let pool = pool(workers)?;
    let mut total = Partial::default();
    for n in 1..=max_n {
        let pairs = pair_order(n);
        let count = labeled_count(n);
        let chunks: Vec<Partial> = pool.install(|| {
            (0..count.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut p = Partial::default();
                    for mask in c * CHUNK..((c + 1) * CHUNK).min(count) {
                        let g = graph_from_mask(n, &pairs, mask);
                        p.add(&g, || Origin::Enumeration { n, index: mask }, hyp);
                    }
                    p
                })
                .collect()
        });
        total = chunks.into_iter().fold(total, Partial::merge);
    }
    Ok(VerificationReport {
        hypothesis: hyp,
        counts: total.counts,
        violations: total.violations,
        elapsed: start.elapsed(),
    })
}

/// Every record of a corpus; each must be a simple graph.
pub fn verify_records(
    records: &[CorpusRecord],
    hyp: Hypothesis,
    workers: usize,
) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let mut graphs = Vec::with_capacity(records.len());
    for r in records {
        let g = SimpleGraph::from_multigraph(r.graph.clone()).map_err(|e| match e {
            GraphError::TooLarge { actual, .. } => HarnessError::TooLarge {
                origin: r.origin.clone(),
                n: actual,
            },
            _ => HarnessError::NotSimple {
                origin: r.origin.clone(),
            },
        })?;
        graphs.push(g);
    }
    let parts: Vec<Partial> = pool(workers)?.install(|| {
        graphs
            .par_iter()
            .zip(records)
            .map(|(g, r)| {
                let mut p = Partial::default();
                p.add(g, || r.origin.clone(), hyp);
                p
            })
            .collect()
    });
    let total = parts.into_iter().fold(Partial::default(), Partial::merge);
    Ok(VerificationReport {
        hypothesis: hyp,
        counts: total.counts,
        violations: total.violations,
        elapsed: start.elapsed(),
    })
}
