use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hamconn::commands::{counterexample, named, prepare_pipeline, props, run_pipeline, NAMED};
use hamconn::enumerate::random_multigraph_with_loops;
use hamconn::formats::{
    decode_edgelist, decode_graph6, decode_sparse6, encode, encode_graph6, read_corpus,
    CorpusRecord, Format,
};
use hamconn::harness::{verify_enumeration, verify_records, Hypothesis};
use hamconn_core::reduction::{PipelineError, Stage};
use hamconn_core::{SimpleGraph, VertexId};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hamconn",
    version,
    about = "Hamiltonian-connectivity of claw-free graphs: verification, pipeline and counterexamples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a theorem on every labeled graph up to --n vertices, or on a corpus file.
    Verify {
        #[command(flatten)]
        source: CorpusArgs,
        /// Enumerate all labeled graphs on 1..=N vertices (at most 7).
        #[arg(long, conflicts_with = "input")]
        n: Option<usize>,
        #[arg(long, default_value = "dom3")]
        hypothesis: Hypothesis,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        /// Write one violating graph (graph6) and failing pair per line.
        #[arg(long)]
        emit_witnesses: Option<PathBuf>,
    },
    /// Print the property table of each input graph.
    Props {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Build hamiltonian paths through the line-graph reduction.
    Pipeline {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, requires = "v", conflicts_with = "all_pairs")]
        u: Option<u32>,
        #[arg(long, requires = "u")]
        v: Option<u32>,
        /// Every pair of distinct vertices.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Emit the Wagner-graph counterexample and its property table.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        pendants: usize,
    },
    /// Round-trip random multigraphs through every encoding.
    Roundtrip {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file, one graph per line (g6, s6) or per header block (el).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "g6")]
    format: Format,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// A named graph instead of a file.
    #[arg(long, conflicts_with = "input", value_parser = clap::builder::PossibleValuesParser::new(NAMED))]
    named: Option<String>,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

fn input_error(e: impl std::fmt::Display) -> Fail {
    Fail(EXIT_INPUT, e.to_string())
}

fn read_records(args: &CorpusArgs) -> Result<Vec<CorpusRecord>, Fail> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| input_error("no input given (use --input or --named)"))?;
    read_corpus(path, args.format).map_err(input_error)
}

fn load_graphs(args: &GraphArgs) -> Result<Vec<(String, SimpleGraph)>, Fail> {
    if let Some(name) = &args.named {
        let g = named(name).ok_or_else(|| input_error(format!("unknown graph {name}")))?;
        return Ok(vec![(name.clone(), g)]);
    }
    read_records(&args.corpus)?
        .into_iter()
        .map(|r| {
            let label = r.origin.to_string();
            SimpleGraph::from_multigraph(r.graph)
                .map(|g| (label.clone(), g))
                .map_err(|e| input_error(format!("{label}: {e}")))
        })
        .collect()
}

fn pipeline_exit(e: &PipelineError) -> u8 {
    match e.stage() {
        Stage::Input | Stage::Preimage | Stage::Core => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Verify {
            source,
            n,
            hypothesis,
            workers,
            emit_witnesses,
        } => {
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |k| k.get()))
                .max(1);
            let report = match (n, &source.input) {
                (Some(n), _) => verify_enumeration(n, hypothesis, workers).map_err(input_error)?,
                (None, Some(_)) => verify_records(&read_records(&source)?, hypothesis, workers)
                    .map_err(input_error)?,
                (None, None) => return Err(input_error("give --n or --input")),
            };
            println!("{report}");
            for v in &report.violations {
                println!("violation {}: {v}", v.origin);
            }
            if let Some(path) = emit_witnesses {
                let text: String = report.violations.iter().map(|v| format!("{v}\n")).collect();
                fs::write(&path, text)
                    .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            }
            Ok(if report.violations.is_empty() {
                0
            } else {
                EXIT_VIOLATIONS
            })
        }
        Command::Props { graph } => {
            for (label, g) in load_graphs(&graph)? {
                println!("# {label}");
                println!("{}", props(&g));
            }
            Ok(0)
        }
        Command::Pipeline {
            graph,
            u,
            v,
            all_pairs,
        } => {
            let mut worst = 0;
            for (label, g) in load_graphs(&graph)? {
                println!("# {label}");
                let n = g.vertex_count() as u32;
                let pairs: Vec<(u32, u32)> = match (u, v) {
                    (Some(u), Some(v)) => vec![(u, v)],
                    _ if all_pairs => (0..n)
                        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                        .collect(),
                    _ => return Err(input_error("give --u and --v, or --all-pairs")),
                };
                let (p, d) = match prepare_pipeline(&g) {
                    Ok(x) => x,
                    Err(e) => {
                        println!("failed at {:?}: {e}", e.stage());
                        worst = worst.max(pipeline_exit(&e));
                        continue;
                    }
                };
                for (a, b) in pairs {
                    match run_pipeline(&p, &d, VertexId(a), VertexId(b)) {
                        Ok(r) => println!("{r}"),
                        Err(e) => {
                            println!("{a} -> {b}: failed at {:?}: {e}", e.stage());
                            worst = worst.max(pipeline_exit(&e));
                        }
                    }
                }
            }
            Ok(worst)
        }
        Command::Counterexample { pendants } => {
            if pendants == 0 {
                return Err(input_error("--pendants must be at least 1"));
            }
            let r = counterexample(pendants);
            println!("{r}");
            Ok(if r.is_sharp() { 0 } else { EXIT_VIOLATIONS })
        }
        Command::Roundtrip { seed, count } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut failures = 0usize;
            for i in 0..count {
                let n = rng.gen_range(1..=16);
                let m = rng.gen_range(0..=24);
                let g = random_multigraph_with_loops(&mut rng, n, m);
                for format in [Format::Sparse6, Format::EdgeList] {
                    let text =
                        encode(&g, format).map_err(|e| Fail(EXIT_INTERNAL, e.to_string()))?;
                    let back = match format {
                        Format::Sparse6 => decode_sparse6(&text),
                        _ => decode_edgelist(&text),
                    };
                    if back.as_ref().map(|b| b.normalized()) != Ok(g.normalized()) {
                        println!("case {i}: {format} round trip failed for {text:?}");
                        failures += 1;
                    }
                }
                if let Ok(s) = SimpleGraph::from_multigraph(g.normalized()) {
                    let text = encode_graph6(&s);
                    if decode_graph6(&text)
                        .map(|b| b.adjacency().to_vec())
                        .as_deref()
                        != Ok(s.adjacency())
                    {
                        println!("case {i}: graph6 round trip failed for {text:?}");
                        failures += 1;
                    }
                }
            }
            println!("seed {seed}: {count} cases, {failures} failures");
            Ok(if failures == 0 { 0 } else { EXIT_VIOLATIONS })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
