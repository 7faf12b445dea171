//! Seeded experiment sweeps with replayable CSV records, and deficit fits.
//!
//! A sweep is a flat TOML grid:
//!
//! ```toml
//! generator = "round_robin"   # round_robin | circular_odd | random_proper
//! n = [64, 128, 256]
//! seeds = [0, 1, 2]           # or: seed_start = 0, seed_count = 10
//! algorithm = "cycle"         # cycle | hamilton | forest
//! C = 0.5                     # cycle only
//! budget_width = 10000        # hamilton and forest
//! budget_depth = 8
//! extra_colors = 0            # random_proper only
//! ```
//!
//! Records come out in grid order (`n` outer, seed inner) whatever the
//! thread count, and wall-clock time is only included on request, so equal
//! grids give byte-identical CSV.

mod colors;
mod fit;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Deserialize;
use thiserror::Error;

use crate::cycle::{long_rainbow_cycle, PipelineConfig, DEFAULT_C, DEFAULT_FLOOR};
use crate::forest::{greedy_rainbow_forest, hamilton_from_forest, swap_minimize, PathForest, SearchBudget};
use crate::gen::{GeneratorKind, GeneratorSpec};
use crate::graph::ColoredGraph;
use crate::oracle::{verify_forest, verify_hamilton_cycle, verify_rainbow_cycle};
use crate::par;

pub use colors::{color_deficit_experiment, color_records_to_csv, ColorRecord};
pub use fit::{fit_deficit, DeficitFit, FitRow, Scaling};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("need at least 3 distinct n values with data, got {0}")]
    InsufficientData(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Long rainbow cycle pipeline.
    Cycle,
    /// Greedy forest, swap minimization, then a many-colored Hamilton cycle.
    Hamilton,
    /// Greedy forest followed by swap minimization.
    Forest,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Cycle => "cycle",
            Algorithm::Hamilton => "hamilton",
            Algorithm::Forest => "forest",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cycle" => Some(Algorithm::Cycle),
            "hamilton" => Some(Algorithm::Hamilton),
            "forest" => Some(Algorithm::Forest),
            _ => None,
        }
    }
}

fn default_c() -> f64 {
    DEFAULT_C
}

fn default_width() -> usize {
    10_000
}

fn default_depth() -> usize {
    8
}

fn default_floor() -> usize {
    DEFAULT_FLOOR
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub generator: GeneratorKind,
    pub n: Vec<usize>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub seed_start: u64,
    #[serde(default)]
    pub seed_count: usize,
    pub algorithm: Algorithm,
    #[serde(rename = "C", default = "default_c")]
    pub c: f64,
    #[serde(default = "default_width")]
    pub budget_width: usize,
    #[serde(default = "default_depth")]
    pub budget_depth: usize,
    #[serde(default)]
    pub extra_colors: usize,
    #[serde(default = "default_floor")]
    pub floor: usize,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let config: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validated()
    }

    /// A one-cell grid.
    pub fn single(generator: GeneratorKind, n: usize, seed: u64, algorithm: Algorithm) -> Self {
        Self {
            generator,
            n: vec![n],
            seeds: vec![seed],
            seed_start: 0,
            seed_count: 0,
            algorithm,
            c: DEFAULT_C,
            budget_width: default_width(),
            budget_depth: default_depth(),
            extra_colors: 0,
            floor: DEFAULT_FLOOR,
        }
    }

    pub fn validated(self) -> Result<Self, HarnessError> {
        if self.n.is_empty() {
            return Err(HarnessError::Config("n is empty".into()));
        }
        if self.seed_list().is_empty() {
            return Err(HarnessError::Config("no seeds: give seeds or seed_count".into()));
        }
        if self.generator == GeneratorKind::LatinSymmetric {
            return Err(HarnessError::Config("latin squares cannot be generated from a grid".into()));
        }
        if !(self.c > 0.0) || self.budget_width == 0 || self.budget_depth == 0 {
            return Err(HarnessError::Config("C, budget_width and budget_depth must be positive".into()));
        }
        Ok(self)
    }

    /// Explicit seeds followed by `seed_start..seed_start + seed_count`.
    pub fn seed_list(&self) -> Vec<u64> {
        let mut seeds = self.seeds.clone();
        seeds.extend(self.seed_start..self.seed_start + self.seed_count as u64);
        seeds
    }

    fn budget(&self, seed: u64) -> SearchBudget {
        SearchBudget::bounded(self.budget_width, self.budget_depth, usize::MAX, seed)
    }

    /// The command line that recomputes the record for `(n, seed)`.
    pub fn invocation(&self, n: usize, seed: u64) -> String {
        let mut s = format!(
            "rainbow bench --generator {} --n {n} --seed {seed} --algorithm {}",
            self.generator.name(),
            self.algorithm.name()
        );
        match self.algorithm {
            Algorithm::Cycle => {
                let _ = write!(s, " --C {} --floor {}", self.c, self.floor);
            }
            Algorithm::Hamilton | Algorithm::Forest => {
                let _ = write!(s, " --budget-width {} --budget-depth {}", self.budget_width, self.budget_depth);
            }
        }
        if self.generator == GeneratorKind::RandomProper {
            let _ = write!(s, " --extra-colors {}", self.extra_colors);
        }
        s
    }
}

/// One `(instance, seed)` cell of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRecord {
    pub n: usize,
    pub seed: u64,
    pub generator: &'static str,
    pub algorithm: Algorithm,
    /// Cycle length, or path count for forests.
    pub length: Option<usize>,
    /// Paths in the forest the result was built from.
    pub paths: Option<usize>,
    pub distinct_colors: Option<usize>,
    /// `n - cycle length` for cycles, `n - distinct colors` for Hamilton
    /// cycles, `paths - 1` for forests.
    pub deficit: Option<usize>,
    pub rounds: Option<usize>,
    pub valid: bool,
    pub error: Option<String>,
    pub runtime_ms: u128,
    pub invocation: String,
}

impl ExperimentRecord {
    pub const CSV_HEADER: &'static str =
        "n,seed,generator,algorithm,length,paths,distinct_colors,deficit,rounds,valid,error,invocation";

    pub fn csv_row(&self, timing: bool) -> String {
        let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.seed,
            self.generator,
            self.algorithm.name(),
            opt(self.length),
            opt(self.paths),
            opt(self.distinct_colors),
            opt(self.deficit),
            opt(self.rounds),
            self.valid,
            self.error.as_deref().unwrap_or(""),
            self.invocation
        );
        if timing {
            let _ = write!(row, ",{}", self.runtime_ms);
        }
        row
    }
}

/// Renders records under the header; `timing` appends a `runtime_ms` column.
pub fn records_to_csv(records: &[ExperimentRecord], timing: bool) -> String {
    let mut out = String::from(ExperimentRecord::CSV_HEADER);
    if timing {
        out.push_str(",runtime_ms");
    }
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row(timing));
        out.push('\n');
    }
    out
}

#[derive(Default)]
struct Outcome {
    length: Option<usize>,
    paths: Option<usize>,
    distinct_colors: Option<usize>,
    deficit: Option<usize>,
    rounds: Option<usize>,
}

fn minimized(host: &ColoredGraph, budget: SearchBudget) -> PathForest {
    let n = host.n() as f64;
    let fraction = 1.0 / n.sqrt();
    let greedy = greedy_rainbow_forest(host, fraction, fraction);
    swap_minimize(&greedy.forest, host, budget).forest
}

fn execute(config: &SweepConfig, host: &ColoredGraph, seed: u64) -> Result<Outcome, String> {
    let n = host.n();
    match config.algorithm {
        Algorithm::Cycle => {
            let pipeline = PipelineConfig { c: config.c, seed, floor: config.floor, ..PipelineConfig::default() };
            let run = long_rainbow_cycle(host, &pipeline).map_err(|e| e.class().to_string())?;
            verify_rainbow_cycle(host, &run.cycle).map_err(|v| format!("invalid: {v}"))?;
            let len = run.cycle.len();
            Ok(Outcome {
                length: Some(len),
                paths: Some(run.metrics.forest_paths),
                distinct_colors: Some(len),
                deficit: Some(n - len),
                rounds: Some(run.metrics.rounds),
            })
        }
        Algorithm::Hamilton => {
            let forest = minimized(host, config.budget(seed));
            verify_forest(host, forest.paths()).map_err(|v| format!("invalid forest: {v}"))?;
            let cycle = hamilton_from_forest(&forest, host).map_err(|e| format!("hamilton: {e}"))?;
            let colors = verify_hamilton_cycle(host, &cycle.vertices).map_err(|v| format!("invalid: {v}"))?;
            if colors != cycle.distinct_colors {
                return Err("invalid: reported color count disagrees".into());
            }
            Ok(Outcome {
                length: Some(n),
                paths: Some(forest.path_count()),
                distinct_colors: Some(colors),
                deficit: Some(n - colors),
                rounds: None,
            })
        }
        Algorithm::Forest => {
            let forest = minimized(host, config.budget(seed));
            verify_forest(host, forest.paths()).map_err(|v| format!("invalid forest: {v}"))?;
            if !forest.is_spanning(n) {
                return Err("invalid forest: not spanning".into());
            }
            let p = forest.path_count();
            Ok(Outcome { length: Some(p), paths: Some(p), deficit: Some(p - 1), ..Outcome::default() })
        }
    }
}

/// Runs and validates one grid cell; failures become records with an error.
pub fn run_cell(config: &SweepConfig, n: usize, seed: u64) -> ExperimentRecord {
    let start = Instant::now();
    let spec = GeneratorSpec { kind: config.generator, n, extra_colors: config.extra_colors, seed };
    let outcome = spec.generate().map_err(|e| format!("generator: {e}")).and_then(|host| execute(config, &host, seed));
    let runtime_ms = start.elapsed().as_millis();
    let (outcome, error) = match outcome {
        Ok(o) => (o, None),
        Err(e) => (Outcome::default(), Some(e.replace(',', ";"))),
    };
    ExperimentRecord {
        n,
        seed,
        generator: config.generator.name(),
        algorithm: config.algorithm,
        length: outcome.length,
        paths: outcome.paths,
        distinct_colors: outcome.distinct_colors,
        deficit: outcome.deficit,
        rounds: outcome.rounds,
        valid: error.is_none(),
        error,
        runtime_ms,
        invocation: config.invocation(n, seed),
    }
}

/// Every `(n, seed)` of the grid, `n` outer.
pub fn sweep(config: &SweepConfig) -> Vec<ExperimentRecord> {
    let cells: Vec<(usize, u64)> =
        config.n.iter().flat_map(|&n| config.seed_list().into_iter().map(move |s| (n, s))).collect();
    par::map(&cells, |&(n, seed)| run_cell(config, n, seed))
}
