//! `rainbow`: command-line front end to the rainbow-core library.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use num_rational::Ratio;

use rainbow_core::cycle::{long_rainbow_cycle, CycleMetrics, PipelineConfig, DEFAULT_C, DEFAULT_FLOOR};
use rainbow_core::expander::{check_expander, witness_is_valid, ExpanderMode, ExpanderParams, Verdict, Witness};
use rainbow_core::forest::{greedy_rainbow_forest, swap_minimize, write_forest, SearchBudget};
use rainbow_core::gen::{latin_symmetric, parse_latin, GeneratorKind, GeneratorSpec};
use rainbow_core::graph::{parse_graph, write_graph, ColoredGraph};
use rainbow_core::harness::{records_to_csv, sweep, Algorithm, SweepConfig};
use rainbow_core::oracle::{
    brute_longest_rainbow_cycle, brute_min_spanning_forest, first_violating_pair, verify_forest, verify_rainbow_cycle,
    verify_sequence_bound, SequenceCheckInput,
};
use rainbow_core::sampler::{adversarial_pair_scan, check_degree_concentration, sample_color_subgraph, SampleParams};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow cycles and path forests in properly edge-colored graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a properly edge-colored complete graph.
    Gen(GenArgs),
    /// Build a rainbow path forest, optionally swap-minimized.
    Forest(ForestArgs),
    /// Keep each color class independently with probability p.
    Sample(SampleArgs),
    /// Check degree and pair concentration of a sampled subgraph.
    Concentration(ConcentrationArgs),
    /// Test the (a, b)-expander property.
    Expander(ExpanderArgs),
    /// Run the long rainbow cycle pipeline.
    Cycle(CycleArgs),
    /// Exact answers for tiny instances and the sequence bound.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Run a sweep grid, or replay a single record.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GeneratorKind,
    /// Vertex count; ignored for Latin squares.
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Spare colors for random proper colorings.
    #[arg(long, default_value_t = 0)]
    extra_colors: usize,
    /// Symmetric Latin square file (n lines of n symbols).
    #[arg(long)]
    latin: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ForestArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    gamma: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Reduce the path count with swaps.
    #[arg(long)]
    minimize: bool,
    #[arg(long, default_value_t = 10_000)]
    budget_width: usize,
    #[arg(long, default_value_t = 8)]
    budget_depth: usize,
    /// Improvement rounds; unlimited when omitted.
    #[arg(long)]
    budget_rounds: Option<usize>,
    /// Search the whole swap closure; only sensible for tiny graphs.
    #[arg(long)]
    unlimited: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ConcentrationArgs {
    /// Host graph.
    #[arg(long)]
    g: PathBuf,
    /// Sampled subgraph.
    #[arg(long)]
    h: PathBuf,
    #[arg(long)]
    epsilon: f64,
    /// Sampling probability; defaults to the fraction of host colors kept in H.
    #[arg(long)]
    p: Option<f64>,
    /// Random pairs for the pair-density scan (0 disables it).
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sampled,
    Exhaustive,
}

#[derive(Args)]
struct ExpanderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long, value_enum, default_value_t = Mode::Sampled)]
    mode: Mode,
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CycleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "C", default_value_t = DEFAULT_C)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest accepted vertex count.
    #[arg(long, default_value_t = DEFAULT_FLOOR)]
    floor: usize,
    /// One-row metrics CSV.
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// Cycle vertices, space separated.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Longest rainbow cycle by exhaustive search.
    Cycle {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Fewest paths in a spanning rainbow linear forest.
    Forest {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check a sequence against the pairwise condition and the length bound.
    Seqbound {
        /// Rational constant such as 1/6.
        #[arg(long)]
        c: Ratio<i64>,
        #[arg(long)]
        m: usize,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',')]
        seq: Vec<u64>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Flat TOML grid.
    #[arg(long, conflicts_with_all = ["generator", "n", "seed", "algorithm"])]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_kind)]
    generator: Option<GeneratorKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Option<Algorithm>,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    floor: Option<usize>,
    #[arg(long)]
    budget_width: Option<usize>,
    #[arg(long)]
    budget_depth: Option<usize>,
    #[arg(long)]
    extra_colors: Option<usize>,
    /// Append a runtime_ms column (breaks byte-for-byte reproducibility).
    #[arg(long)]
    timing: bool,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    GeneratorKind::parse(s).ok_or_else(|| format!("unknown generator '{s}'"))
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    Algorithm::parse(s).ok_or_else(|| format!("unknown algorithm '{s}' (cycle, hamilton, forest)"))
}

fn read_graph(path: &Path) -> Result<ColoredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn gen(args: GenArgs) -> Result<()> {
    let g = if args.kind == GeneratorKind::LatinSymmetric {
        let Some(path) = &args.latin else { bail!("--kind latin_symmetric needs --latin FILE") };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        latin_symmetric(&parse_latin(&text))?
    } else {
        GeneratorSpec { kind: args.kind, n: args.n, extra_colors: args.extra_colors, seed: args.seed }.generate()?
    };
    write(&args.out, &write_graph(&g))?;
    println!("n={} edges={} colors={}", g.n(), g.edge_count(), g.colors().count());
    Ok(())
}

fn forest(args: ForestArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    let greedy = greedy_rainbow_forest(&g, args.gamma, args.delta);
    let mut f = greedy.forest;
    info!("greedy forest: {} paths", f.path_count());
    if args.minimize {
        let budget = if args.unlimited {
            SearchBudget::unlimited(args.seed)
        } else {
            SearchBudget::bounded(
                args.budget_width,
                args.budget_depth,
                args.budget_rounds.unwrap_or(usize::MAX),
                args.seed,
            )
        };
        let outcome = swap_minimize(&f, &g, budget);
        info!("minimized in {} rounds, {} swaps, {:?}", outcome.rounds, outcome.swaps.len(), outcome.status);
        f = outcome.forest;
    }
    verify_forest(&g, f.paths()).map_err(|v| anyhow::anyhow!("forest failed validation: {v}"))?;
    write(&args.out, &write_forest(&f))?;
    println!("paths={}", f.path_count());
    Ok(())
}

fn sample(args: SampleArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    // The tolerance only matters to the checks, not to sampling.
    let params = SampleParams::new(args.p, 0.5, args.seed)?;
    let h = sample_color_subgraph(&g, &params);
    write(&args.out, &write_graph(&h))?;
    println!("kept {} of {} colors, {} edges", h.colors().count(), g.colors().count(), h.edge_count());
    Ok(())
}

fn concentration(args: ConcentrationArgs) -> Result<()> {
    let g = read_graph(&args.g)?;
    let h = read_graph(&args.h)?;
    let p = match args.p {
        Some(p) => p,
        None => {
            let p = h.colors().count() as f64 / g.colors().count().max(1) as f64;
            info!("using kept-color fraction p = {p:.6}");
            p
        }
    };
    let params = SampleParams::new(p, args.epsilon, args.seed)?;
    let mut report = check_degree_concentration(&h, &g, &params)?;
    if args.pairs > 0 {
        let (a, b) = params.pair_sizes(g.n());
        if a + b <= g.n() {
            let scan = adversarial_pair_scan(&h, &g, a, b, &params, args.pairs, args.seed)?;
            println!(
                "pairs: {} examined, {} below threshold, min margin {:.4}",
                scan.examined,
                scan.violations,
                scan.min_margin()
            );
            report.pair_checks.push(scan.worst);
        } else {
            warn!("pair sizes {a} + {b} exceed n = {}; pair scan skipped", g.n());
        }
    }
    write(&args.report, &report.to_csv())?;
    println!("degree band: {} of {} vertices pass (p = {p:.6})", report.passing_vertices(), g.n());
    Ok(())
}

fn expander(args: ExpanderArgs) -> Result<()> {
    let h = read_graph(&args.input)?;
    let mode = match args.mode {
        Mode::Sampled => ExpanderMode::Sampled { samples: args.samples, seed: args.seed },
        Mode::Exhaustive => ExpanderMode::Exhaustive,
    };
    let verdict = check_expander(&h, &ExpanderParams { a: args.a, b: args.b, mode });
    match &verdict {
        Verdict::Refuted(w) => {
            if !witness_is_valid(&h, args.a, args.b, w) {
                bail!("internal error: witness failed re-validation");
            }
            match w {
                Witness::LowDegree { vertex, degree } => println!("refuted: vertex {vertex} has degree {degree}"),
                Witness::EmptyPair { a, b } => {
                    let show = |s: &rainbow_core::graph::VertexSet| {
                        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    };
                    println!("refuted: no edges between A = [{}] and B = [{}]", show(a), show(b));
                }
            }
        }
        Verdict::Undetermined(why) => println!("undetermined: {why}"),
        Verdict::Holds => println!("holds"),
    }
    Ok(())
}

fn cycle(args: CycleArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    let config = PipelineConfig { c: args.c, seed: args.seed, floor: args.floor, ..PipelineConfig::default() };
    let run = long_rainbow_cycle(&g, &config).map_err(|e| anyhow::anyhow!("{} ({})", e, e.class()))?;
    verify_rainbow_cycle(&g, &run.cycle).map_err(|v| anyhow::anyhow!("cycle failed validation: {v}"))?;
    if let Some(path) = &args.metrics {
        write(path, &format!("{}\n{}\n", CycleMetrics::CSV_HEADER, run.metrics.csv_row()))?;
    }
    if let Some(path) = &args.out {
        let line: Vec<String> = run.cycle.iter().map(|v| v.to_string()).collect();
        write(path, &format!("{}\n", line.join(" ")))?;
    }
    println!(
        "cycle length {} of {} (deficit {}), {} extension rounds, stop: {}",
        run.cycle.len(),
        g.n(),
        run.metrics.deficit,
        run.metrics.rounds,
        run.metrics.stop
    );
    Ok(())
}

fn oracle(query: OracleQuery) -> Result<()> {
    match query {
        OracleQuery::Cycle { input } => {
            let g = read_graph(&input)?;
            let best = brute_longest_rainbow_cycle(&g)?;
            match best.witness {
                Some(c) => println!("longest rainbow cycle: {} [{}]", best.value, join(&c)),
                None => println!("no rainbow cycle"),
            }
        }
        OracleQuery::Forest { input } => {
            let g = read_graph(&input)?;
            let best = brute_min_spanning_forest(&g)?;
            println!("minimum paths: {}", best.value);
            for p in &best.witness {
                println!("  {}", join(p));
            }
        }
        OracleQuery::Seqbound { c, m, seq } => {
            let input = SequenceCheckInput::new(c, m, seq)?;
            if let Some((j, l)) = first_violating_pair(&input) {
                println!("condition fails at (j, l) = ({j}, {l})");
                return Ok(());
            }
            let b = verify_sequence_bound(&input)?;
            println!(
                "condition holds; k = {} <= bound in [{:.6}, {:.6}]: {}",
                b.k, b.bound_lower, b.bound_upper, b.holds
            );
        }
    }
    Ok(())
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn bench(args: BenchArgs) -> Result<()> {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            SweepConfig::from_toml(&text)?
        }
        None => {
            let (Some(generator), Some(n), Some(seed), Some(algorithm)) =
                (args.generator, args.n, args.seed, args.algorithm)
            else {
                bail!("give --config, or all of --generator, --n, --seed and --algorithm");
            };
            let mut config = SweepConfig::single(generator, n, seed, algorithm);
            config.c = args.c.unwrap_or(config.c);
            config.floor = args.floor.unwrap_or(config.floor);
            config.budget_width = args.budget_width.unwrap_or(config.budget_width);
            config.budget_depth = args.budget_depth.unwrap_or(config.budget_depth);
            config.extra_colors = args.extra_colors.unwrap_or(config.extra_colors);
            config.validated()?
        }
    };
    let records = sweep(&config);
    let failed = records.iter().filter(|r| !r.valid).count();
    let csv = records_to_csv(&records, args.timing);
    match &args.out {
        Some(path) => {
            write(path, &csv)?;
            println!("{} records, {failed} with errors", records.len());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Gen(a) => gen(a),
        Command::Forest(a) => forest(a),
        Command::Sample(a) => sample(a),
        Command::Concentration(a) => concentration(a),
        Command::Expander(a) => expander(a),
        Command::Cycle(a) => cycle(a),
        Command::Oracle { query } => oracle(query),
        Command::Bench(a) => bench(a),
    }
}
