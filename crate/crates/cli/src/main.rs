use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use topk_subsets::bench::{emit_csv, run_matrix, summarize, BenchConfig, Distribution};
use topk_subsets::dot::write_dot;
use topk_subsets::enumerate::{DedupHeap, DedupOptions, SeenPolicy};
use topk_subsets::ranked::DeltaExpander;
use topk_subsets::verify::{run_verify, Fault, VerifyConfig};
use topk_subsets::{
    drain, load_input, subset_count, topk, IncrementalEdges, InputSet, Mode, RankedSubset, TopK,
    Variant, Weight,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "topk-subsets",
    version,
    about = "Enumerate the k smallest-sum subsets of a set of numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the k smallest-sum subsets of the input
    Topk(TopkArgs),
    /// Check every variant against brute force and the DAG invariants
    Verify(VerifyArgs),
    /// Time variants over a grid of n and k and write CSV
    Bench(BenchArgs),
    /// Export the final DAG for small n as Graphviz DOT
    Dag(DagArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Baseline,
    Dedup,
    Bitvec,
    Compact,
}

impl Algo {
    fn variant(self, edges: IncrementalEdges) -> Variant {
        match self {
            Algo::Baseline => Variant::Baseline,
            Algo::Dedup => Variant::DedupHeap(edges),
            Algo::Bitvec => Variant::OnDemandBitVec,
            Algo::Compact => Variant::OnDemandCompact,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EdgeSet {
    Incr,
    Mincr,
    Mmincr,
}

impl From<EdgeSet> for IncrementalEdges {
    fn from(e: EdgeSet) -> Self {
        match e {
            EdgeSet::Incr => IncrementalEdges::All,
            EdgeSet::Mincr => IncrementalEdges::Mandatory,
            EdgeSet::Mmincr => IncrementalEdges::ModifiedMandatory,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Sums,
    Subsets,
    Deltas,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Int,
    Float,
}

#[derive(clap::Args)]
struct TopkArgs {
    /// Input file, or `-` for stdin
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value = "compact")]
    algo: Algo,
    /// Incremental edges followed by `--algo dedup`
    #[arg(long, value_enum, default_value = "mmincr")]
    edge_set: EdgeSet,
    #[arg(long, value_enum, default_value = "sums")]
    output: Output,
    #[arg(long, value_enum, default_value = "int")]
    mode: ModeArg,
    /// Write run counters as key=value lines to this file
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// With `--algo dedup`, forget extracted subsets as the original
    /// formulation does; may report a subset twice when sums tie
    #[arg(long)]
    faithful: bool,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=16))]
    n_max: u64,
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    seeds: u64,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "baseline,dedup,bitvec,compact"
    )]
    algos: Vec<Algo>,
    #[arg(long, value_enum, default_value = "mmincr")]
    edge_set: EdgeSet,
    /// Break the cursor-only child rule on purpose (`type2-cursor`)
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "100,1000")]
    n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1000,10000")]
    k_list: Vec<u64>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "baseline,bitvec,compact"
    )]
    algos: Vec<Algo>,
    #[arg(long, value_enum, default_value = "mmincr")]
    edge_set: EdgeSet,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// CSV destination, or `-` for stdout
    #[arg(long, default_value = "-")]
    csv: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    reps: u32,
    /// Smallest generated value
    #[arg(long, default_value_t = 1)]
    lo: i64,
    /// Largest generated value
    #[arg(long, default_value_t = 1_000_000)]
    hi: i64,
}

#[derive(clap::Args)]
struct DagArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
    n: u64,
    /// DOT destination, or `-` for stdout
    #[arg(long)]
    dot: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Topk(a) => cmd_topk(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Dag(a) => cmd_dag(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn io_failure(e: io::Error) -> Failure {
    fail(EXIT_FAIL, e)
}

fn open_out(dest: &str) -> Result<Box<dyn Write>, Failure> {
    if dest == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        let f = File::create(dest).map_err(|e| fail(EXIT_FAIL, format!("{dest}: {e}")))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

fn cmd_topk(a: TopkArgs) -> Result<ExitCode, Failure> {
    if a.output == Output::Deltas && a.algo != Algo::Compact {
        return Err(fail(EXIT_USAGE, "--output deltas requires --algo compact"));
    }
    if a.faithful && a.algo != Algo::Dedup {
        return Err(fail(EXIT_USAGE, "--faithful applies only to --algo dedup"));
    }
    let mut text = String::new();
    let read = if a.input == "-" {
        io::stdin().read_to_string(&mut text)
    } else {
        File::open(&a.input).and_then(|mut f| f.read_to_string(&mut text))
    };
    read.map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", a.input)))?;
    match a.mode {
        ModeArg::Int => run_topk::<i64>(&a, &text),
        ModeArg::Float => run_topk::<f64>(&a, &text),
    }
}

fn run_topk<W: Weight>(a: &TopkArgs, text: &str) -> Result<ExitCode, Failure> {
    let input: InputSet<W> = load_input(text).map_err(|e| fail(EXIT_INPUT, e))?;
    let variant = a.algo.variant(a.edge_set.into());
    let stream = if a.faithful {
        let opts = DedupOptions {
            edges: a.edge_set.into(),
            seen: SeenPolicy::DeleteOnExtract,
            ..DedupOptions::default()
        };
        TopK::Dedup(DedupHeap::new(&input, a.k, opts).map_err(|e| fail(EXIT_USAGE, e))?)
    } else {
        topk(&input, a.k, variant).map_err(|e| fail(EXIT_USAGE, e))?
    };

    // stdout is line buffered, so each record leaves before the next extraction
    let mut out = io::stdout().lock();
    let mut write_err = None;
    let mut emit = |line: String| {
        if write_err.is_none() {
            if let Err(e) = writeln!(out, "{line}") {
                write_err = Some(e);
            }
        }
    };
    let summary = match a.output {
        Output::Sums => drain(stream, |r| emit(format!("{}\t{}", r.rank, r.sum))),
        Output::Deltas => drain(stream, |r| emit(delta_line(&r))),
        Output::Subsets if variant.reports_positions() => drain(stream, |r| emit(subset_line(&r))),
        Output::Subsets => {
            let mut expander = DeltaExpander::new();
            drain(stream, |mut r| {
                let delta = r.delta.expect("cursor-only records carry deltas");
                match expander.expand(r.rank, &delta) {
                    Ok(p) => {
                        r.positions = Some(p);
                        emit(subset_line(&r));
                    }
                    Err(e) => panic!("delta stream is inconsistent: {e}"),
                }
            })
        }
    };
    if let Some(e) = write_err {
        if e.kind() != io::ErrorKind::BrokenPipe {
            return Err(io_failure(e));
        }
    }

    if summary.truncated {
        eprintln!(
            "note: k = {} exceeds the {} non-empty subsets of {} values; all {} were reported",
            a.k,
            subset_count(input.len()),
            input.len(),
            summary.reported
        );
    }
    if let Some(path) = &a.metrics {
        let m = summary.metrics;
        let mut f =
            File::create(path).map_err(|e| fail(EXIT_FAIL, format!("{}: {e}", path.display())))?;
        let mode = match W::MODE {
            Mode::Integer => "int",
            Mode::Floating => "float",
        };
        writeln!(
            f,
            "variant={}\nmode={mode}\nn={}\nk={}\nreported={}\ntruncated={}\ntotal_insertions={}\npeak_size={}\nextractions={}\nprunes={}\nelapsed_ns={}",
            variant.label(),
            input.len(),
            a.k,
            summary.reported,
            summary.truncated,
            m.total_insertions,
            m.peak_size,
            m.extractions,
            m.prunes,
            m.elapsed.as_nanos()
        )
        .map_err(io_failure)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn subset_line<W: Weight>(r: &RankedSubset<W>) -> String {
    let p = r.positions.as_ref().expect("positions filled in");
    format!("{}\t{}\t{}", r.rank, r.sum, p)
}

fn delta_line<W: Weight>(r: &RankedSubset<W>) -> String {
    let d = r.delta.expect("cursor-only records carry deltas");
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "{}\t{}\t{}\t{}\t{}",
        r.rank,
        r.sum,
        show(d.parent_rank.map(|p| p.to_string())),
        show(d.removed.map(|p| p.to_string())),
        show(d.added.map(|p| p.to_string()))
    )
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, Failure> {
    let fault = match &a.inject_fault {
        None => None,
        Some(name) => Some(
            Fault::from_name(name)
                .ok_or_else(|| fail(EXIT_USAGE, format!("unknown fault `{name}`")))?,
        ),
    };
    let mut variants: Vec<Variant> = a
        .algos
        .iter()
        .map(|x| x.variant(a.edge_set.into()))
        .collect();
    variants.dedup();
    let cfg = VerifyConfig {
        n_max: a.n_max as usize,
        seeds: a.seeds,
        variants,
        fault,
    };
    let report = run_verify(&cfg).map_err(|e| fail(EXIT_USAGE, e))?;
    print!("{report}");
    if report.passed() {
        println!(
            "all checks passed (n <= {}, {} seeds)",
            cfg.n_max, cfg.seeds
        );
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verification FAILED");
        Ok(ExitCode::from(EXIT_FAIL))
    }
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode, Failure> {
    let mut variants: Vec<Variant> = a
        .algos
        .iter()
        .map(|x| x.variant(a.edge_set.into()))
        .collect();
    variants.dedup();
    let cfg = BenchConfig {
        n_list: a.n_list,
        k_list: a.k_list,
        variants,
        seed: a.seed,
        distribution: Distribution::UniformInt { lo: a.lo, hi: a.hi },
        repetitions: a.reps,
    };
    let rows = run_matrix(&cfg).map_err(|e| fail(EXIT_USAGE, e))?;
    let mut out = open_out(&a.csv)?;
    emit_csv(&rows, &mut out).map_err(io_failure)?;
    out.flush().map_err(io_failure)?;
    for c in summarize(&rows) {
        eprintln!(
            "n={:<6} k={:<9} {:<14} median {:>10.3} ms  insertions {:>9}  peak {:>9}  ({} reps)",
            c.n,
            c.k,
            c.variant,
            c.median_elapsed_ns as f64 / 1e6,
            c.median_total_insertions,
            c.median_peak_size,
            c.repetitions
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dag(a: DagArgs) -> Result<ExitCode, Failure> {
    let n = a.n as usize;
    let (nodes, edges) = match &a.dot {
        Some(dest) => {
            let mut out = open_out(dest)?;
            let counts = write_dot(n, &mut out).map_err(|e| fail(EXIT_FAIL, e))?;
            out.flush().map_err(io_failure)?;
            counts
        }
        None => write_dot(n, io::sink()).map_err(|e| fail(EXIT_FAIL, e))?,
    };
    let report = format!("nodes={nodes} edges={edges}");
    if a.dot.as_deref() == Some("-") {
        eprintln!("{report}");
    } else {
        println!("{report}");
    }
    Ok(ExitCode::SUCCESS)
}
