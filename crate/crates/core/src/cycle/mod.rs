//! Long rainbow cycles in properly colored complete graphs.
//!
//! The pipeline splits the host's color classes into a forest graph and
//! three sparse helper graphs, builds a greedy rainbow path forest in the
//! forest graph, repeatedly extends its first path by absorbing other paths
//! through helper edges, and finally closes the long path into a cycle.

mod close;
mod extend;
mod split;

use thiserror::Error;

use crate::forest::{greedy_rainbow_forest, ForestError};
use crate::graph::{ColoredGraph, Vertex};
use crate::oracle::verify_rainbow_cycle;

pub use close::{close_cycle, ClosedCycle, Closure};
pub use extend::{
    extend_to_long_path, path_builder_step, ExtendConfig, ExtensionDiagnostics, ExtensionOutcome, ExtensionStepResult,
    HelperEdge, RoundLog, StopReason, PERMUTATIONS,
};
pub use split::{split_four, split_with_params, Removal, RoundDegrees, SplitBundle, SplitParams, DELTA_CAP};

/// Default scale of the sampling probability `p = C ln n / sqrt n`.
pub const DEFAULT_C: f64 = 0.5;

/// Smallest host the pipeline accepts by default.
pub const DEFAULT_FLOOR: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("sampling probability p = {0} is not below 1")]
    DegenerateP(f64),
    #[error("host graph is not complete")]
    NotComplete,
    #[error("n = {n} is below the pipeline floor {floor}")]
    BelowFloor { n: usize, floor: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no extension found: {0}")]
    NoExtensionFound(Box<ExtensionDiagnostics>),
    #[error("cycle could not be closed: {0}")]
    NoClosure(String),
    #[error("emitted cycle failed validation: {0}")]
    InvalidCycle(String),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

impl CycleError {
    /// Short stable name for CSV error columns.
    pub fn class(&self) -> &'static str {
        match self {
            CycleError::DegenerateP(_) => "degenerate_p",
            CycleError::NotComplete => "not_complete",
            CycleError::BelowFloor { .. } => "below_floor",
            CycleError::Precondition(_) => "precondition",
            CycleError::NoExtensionFound(_) => "no_extension",
            CycleError::NoClosure(_) => "no_closure",
            CycleError::InvalidCycle(_) => "invalid_cycle",
            CycleError::Forest(_) => "forest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub c: f64,
    pub seed: u64,
    pub floor: usize,
    /// Overrides `a = ceil(sqrt n)`.
    pub a: Option<usize>,
    /// Overrides the round cap `ceil(sqrt n)`.
    pub cap: Option<usize>,
    pub expander_samples: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self { c: DEFAULT_C, seed: 0, floor: DEFAULT_FLOOR, a: None, cap: None, expander_samples: 16 }
    }
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleMetrics {
    pub n: usize,
    pub seed: u64,
    pub c: f64,
    pub p: f64,
    pub a: usize,
    pub b: usize,
    pub delta: f64,
    pub gamma: f64,
    pub forest_paths: usize,
    pub rounds: usize,
    pub removed_classes: usize,
    pub p1_len: usize,
    pub cycle_len: usize,
    pub deficit: usize,
    pub valid: bool,
    pub stop: &'static str,
}

impl CycleMetrics {
    pub const CSV_HEADER: &'static str =
        "n,seed,C,p,a,b,delta,gamma,forest_paths,rounds,removed_classes,p1_len,cycle_len,deficit,valid";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.6},{},{},{:.6},{:.6},{},{},{},{},{},{},{}",
            self.n,
            self.seed,
            self.c,
            self.p,
            self.a,
            self.b,
            self.delta,
            self.gamma,
            self.forest_paths,
            self.rounds,
            self.removed_classes,
            self.p1_len,
            self.cycle_len,
            self.deficit,
            self.valid
        )
    }
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub cycle: Vec<Vertex>,
    pub metrics: CycleMetrics,
    pub extension: ExtensionOutcome,
    pub closed: ClosedCycle,
}

/// Runs split, greedy forest, extension and closing on a complete host.
/// Every returned cycle has passed the independent rainbow-cycle validator.
pub fn long_rainbow_cycle(host: &ColoredGraph, config: &PipelineConfig) -> Result<PipelineRun, CycleError> {
    let n = host.n();
    if n < config.floor {
        return Err(CycleError::BelowFloor { n, floor: config.floor });
    }
    if !host.is_complete() {
        return Err(CycleError::NotComplete);
    }
    let params = SplitParams::derive(n, config.c, config.a)?;
    let mut bundle = split_with_params(host, params, config.seed);
    let greedy = greedy_rainbow_forest(&bundle.g, params.gamma, params.delta);
    let forest = greedy.forest.with_host(host.id());
    let forest_paths = forest.path_count();
    let mut ext = ExtendConfig::for_n(n, config.seed);
    ext.expander_samples = config.expander_samples;
    if let Some(cap) = config.cap {
        ext.cap = cap;
    }
    let extension = extend_to_long_path(&mut bundle, forest, &ext);
    let p1 = extension.forest.paths()[0].clone();
    let closed = close_cycle(&bundle, &p1)?;
    let cycle = closed.vertices.clone();
    verify_rainbow_cycle(host, &cycle).map_err(|v| CycleError::InvalidCycle(v.to_string()))?;
    let metrics = CycleMetrics {
        n,
        seed: config.seed,
        c: config.c,
        p: params.p,
        a: params.a,
        b: params.b,
        delta: params.delta,
        gamma: params.gamma,
        forest_paths,
        rounds: extension.log.len(),
        removed_classes: bundle.removal_log.len(),
        p1_len: p1.len(),
        cycle_len: cycle.len(),
        deficit: n - cycle.len(),
        valid: true,
        stop: extension.stop.label(),
    };
    Ok(PipelineRun { cycle, metrics, extension, closed })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::forest::PathForest;
    use crate::gen::round_robin_even;
    use crate::graph::{build_colored_graph, subgraph_by_colors, Color};

    /// A bundle whose host is the union of the given edge lists, every edge
    /// with its own color.
    pub(crate) fn crafted(n: usize, a: usize, g: &[(Vertex, Vertex)], h: [&[(Vertex, Vertex)]; 3]) -> SplitBundle {
        let parts = [g, h[0], h[1], h[2]];
        let mut all = Vec::new();
        let mut palettes: Vec<Vec<Color>> = vec![Vec::new(); 4];
        for (j, part) in parts.iter().enumerate() {
            for &(u, v) in part.iter() {
                let c = all.len() as Color;
                all.push((u, v, c));
                palettes[j].push(c);
            }
        }
        let host = build_colored_graph(n, all).unwrap();
        let sub = |j: usize| subgraph_by_colors(&host, &palettes[j]);
        let params = SplitParams { n, c: 1.0, p: 0.1, a, b: a, delta: DELTA_CAP, gamma: 0.1 };
        let flat = RoundDegrees { min: 0, max: 0, expected: 0.0 };
        SplitBundle {
            g: sub(0),
            h: [sub(1), sub(2), sub(3)],
            host,
            params,
            degrees: [flat; 3],
            removal_log: Vec::new(),
        }
    }

    pub(crate) fn forest(bundle: &SplitBundle, paths: &[&[Vertex]]) -> PathForest {
        PathForest::new(bundle.host.id(), paths.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn below_floor_and_incomplete_hosts_are_rejected() {
        let host = round_robin_even(4).unwrap();
        let err = long_rainbow_cycle(&host, &PipelineConfig::default()).unwrap_err();
        assert_eq!(err, CycleError::BelowFloor { n: 4, floor: 64 });
        let sparse = build_colored_graph(64, [(0, 1, 0)]).unwrap();
        assert_eq!(long_rainbow_cycle(&sparse, &PipelineConfig::default()).unwrap_err(), CycleError::NotComplete);
    }

    #[test]
    fn pipeline_cycles_on_64_vertices_validate() {
        let host = round_robin_even(64).unwrap();
        let log_cap = (64f64).log2().ceil() as usize;
        for seed in 0..20 {
            let run = long_rainbow_cycle(&host, &PipelineConfig::with_seed(seed)).unwrap();
            assert!(crate::oracle::verify_rainbow_cycle(&host, &run.cycle).is_ok());
            let m = &run.metrics;
            assert_eq!(m.cycle_len, run.cycle.len());
            assert_eq!(m.deficit + m.cycle_len, 64);
            assert!(m.cycle_len + 2 * m.a >= m.p1_len, "seed {seed}: {m:?}");
            assert!(run.extension.donor_uses.iter().all(|&u| u <= log_cap));
            for w in run.extension.log.windows(2) {
                assert!(w[1].p1_len > w[0].p1_len);
            }
        }
    }

    #[test]
    fn pipeline_is_deterministic_per_seed() {
        let host = round_robin_even(96).unwrap();
        let x = long_rainbow_cycle(&host, &PipelineConfig::with_seed(4)).unwrap();
        let y = long_rainbow_cycle(&host, &PipelineConfig::with_seed(4)).unwrap();
        assert_eq!(x.cycle, y.cycle);
        assert_eq!(x.metrics.csv_row(), y.metrics.csv_row());
        assert_eq!(CycleMetrics::CSV_HEADER.split(',').count(), x.metrics.csv_row().split(',').count());
    }
}
