//! How many colors the Hamilton cycles from minimized forests miss.

use std::fmt::Write as _;

use crate::forest::{hamilton_from_forest, SearchBudget};
use crate::graph::ColoredGraph;
use crate::oracle::{verify_forest, verify_hamilton_cycle};
use crate::par;

use super::minimized;

#[derive(Debug, Clone, PartialEq)]
pub struct ColorRecord {
    pub n: usize,
    pub seed: u64,
    pub paths: usize,
    pub distinct_colors: usize,
    /// `n - distinct_colors`.
    pub deficit: usize,
    /// At least `n - paths` colors, as every forest edge stays on the cycle.
    pub forest_bound_ok: bool,
    pub ratio_sqrt: f64,
    pub ratio_log_sq: f64,
}

impl ColorRecord {
    pub const CSV_HEADER: &'static str =
        "n,seed,paths,distinct_colors,deficit,forest_bound_ok,deficit_over_sqrt_2n,deficit_over_log2_sq";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6},{:.6}",
            self.n,
            self.seed,
            self.paths,
            self.distinct_colors,
            self.deficit,
            self.forest_bound_ok,
            self.ratio_sqrt,
            self.ratio_log_sq
        )
    }
}

pub fn color_records_to_csv(records: &[ColorRecord]) -> String {
    let mut out = format!("{}\n", ColorRecord::CSV_HEADER);
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// Minimizes a greedy forest with a seeded budget, closes it into a
/// Hamilton cycle and counts colors, for every host and seed.
pub fn color_deficit_experiment(
    hosts: &[ColoredGraph],
    seeds: &[u64],
    width: usize,
    depth: usize,
) -> Result<Vec<ColorRecord>, String> {
    let cells: Vec<(usize, u64)> = (0..hosts.len()).flat_map(|h| seeds.iter().map(move |&s| (h, s))).collect();
    par::map(&cells, |&(h, seed)| {
        let g = &hosts[h];
        let n = g.n();
        let forest = minimized(g, SearchBudget::bounded(width, depth, usize::MAX, seed));
        verify_forest(g, forest.paths()).map_err(|v| format!("n={n} seed={seed}: {v}"))?;
        let cycle = hamilton_from_forest(&forest, g).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
        let colors = verify_hamilton_cycle(g, &cycle.vertices).map_err(|v| format!("n={n} seed={seed}: {v}"))?;
        let deficit = n - colors;
        let x = n as f64;
        Ok(ColorRecord {
            n,
            seed,
            paths: forest.path_count(),
            distinct_colors: colors,
            deficit,
            forest_bound_ok: colors + forest.path_count() >= n,
            ratio_sqrt: deficit as f64 / (2.0 * x).sqrt(),
            ratio_log_sq: deficit as f64 / x.log2().powi(2),
        })
    })
    .into_iter()
    .collect()
}
