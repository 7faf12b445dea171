//! Generators of properly edge-colored complete graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{build_colored_graph, Color, ColoredGraph, GraphError, Vertex};
use crate::rng::SplitMix64;

/// Restart budget for [`random_proper`].
pub const RANDOM_PROPER_RESTARTS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("round-robin coloring needs an even n >= 2, got {0}")]
    OddN(usize),
    #[error("circular coloring needs an odd n >= 3, got {0}")]
    EvenN(usize),
    #[error("random proper coloring needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("square is not Latin: {0}")]
    NotLatin(String),
    #[error("square is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("greedy coloring with {palette} colors failed {restarts} times")]
    PaletteTooSmall { palette: usize, restarts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    #[serde(alias = "round_robin")]
    RoundRobinEven,
    CircularOdd,
    LatinSymmetric,
    RandomProper,
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::RoundRobinEven => "round_robin",
            Self::CircularOdd => "circular_odd",
            Self::LatinSymmetric => "latin_symmetric",
            Self::RandomProper => "random_proper",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "round_robin" | "round_robin_even" => Some(Self::RoundRobinEven),
            "circular_odd" | "circular" => Some(Self::CircularOdd),
            "latin" | "latin_symmetric" => Some(Self::LatinSymmetric),
            "random_proper" | "random" => Some(Self::RandomProper),
            _ => None,
        }
    }
}

/// Everything needed to regenerate an input instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    #[serde(default)]
    pub extra_colors: usize,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    /// Latin squares are supplied explicitly, so that kind is rejected here.
    pub fn generate(&self) -> Result<ColoredGraph, GenError> {
        match self.kind {
            GeneratorKind::RoundRobinEven => round_robin_even(self.n),
            GeneratorKind::CircularOdd => circular_odd(self.n),
            GeneratorKind::RandomProper => random_proper(self.n, self.extra_colors, self.seed),
            GeneratorKind::LatinSymmetric => Err(GenError::NotLatin("latin_symmetric needs an explicit square".into())),
        }
    }
}

/// Circle-method 1-factorization of `K_n` for even `n`: in round `r`, vertex
/// `n-1` is matched with `r` and `i` with `j` whenever `i + j = 2r (mod n-1)`.
pub fn round_robin_even(n: usize) -> Result<ColoredGraph, GenError> {
    if n < 2 || n % 2 == 1 {
        return Err(GenError::OddN(n));
    }
    let k = n - 1;
    let mut edges = Vec::with_capacity(n * k / 2);
    for r in 0..k {
        edges.push((r, k, r as Color));
        for i in 0..k {
            let j = (2 * r + k - i) % k;
            if i < j {
                edges.push((i, j, r as Color));
            }
        }
    }
    Ok(build_colored_graph(n, edges)?)
}

/// `K_n` for odd `n` with color class `c = {{i, j} : i + j = c (mod n)}`.
pub fn circular_odd(n: usize) -> Result<ColoredGraph, GenError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(GenError::EvenN(n));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, ((i + j) % n) as Color));
        }
    }
    Ok(build_colored_graph(n, edges)?)
}

/// `K_n` colored by a symmetric Latin square: edge `{i, j}` gets `L[i][j]`.
/// Symbols are numbered in order of first appearance on the edges taken in
/// canonical order.
pub fn latin_symmetric<S: AsRef<str>>(square: &[Vec<S>]) -> Result<ColoredGraph, GenError> {
    let n = square.len();
    for (i, row) in square.iter().enumerate() {
        if row.len() != n {
            return Err(GenError::NotLatin(format!("row {i} has {} entries, expected {n}", row.len())));
        }
    }
    let symbols: BTreeMap<&str, usize> = square.iter().flatten().map(|s| (s.as_ref(), 0)).collect();
    if symbols.len() != n {
        return Err(GenError::NotLatin(format!("{} distinct symbols, expected {n}", symbols.len())));
    }
    for i in 0..n {
        let mut row: Vec<&str> = square[i].iter().map(AsRef::as_ref).collect();
        let mut col: Vec<&str> = square.iter().map(|r| r[i].as_ref()).collect();
        row.sort_unstable();
        col.sort_unstable();
        row.dedup();
        col.dedup();
        if row.len() != n {
            return Err(GenError::NotLatin(format!("row {i} repeats a symbol")));
        }
        if col.len() != n {
            return Err(GenError::NotLatin(format!("column {i} repeats a symbol")));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if square[i][j].as_ref() != square[j][i].as_ref() {
                return Err(GenError::NotSymmetric(i, j));
            }
        }
    }
    let mut ids: BTreeMap<&str, Color> = BTreeMap::new();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let next = ids.len() as Color;
            let c = *ids.entry(square[i][j].as_ref()).or_insert(next);
            edges.push((i, j, c));
        }
    }
    Ok(build_colored_graph(n, edges)?)
}

/// Parse a Latin square given as `n` lines of `n` whitespace-separated symbols.
pub fn parse_latin(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(str::to_owned).collect())
        .collect()
}

/// Random proper coloring of `K_n`: seeded random edge order with greedy
/// first-fit colors from a palette of `n - 1 + extra` (even `n`) or
/// `n + extra` (odd `n`) colors, restarting on failure.
pub fn random_proper(n: usize, extra_colors: usize, seed: u64) -> Result<ColoredGraph, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall(n));
    }
    let palette = if n.is_multiple_of(2) { n - 1 } else { n } + extra_colors;
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<(Vertex, Vertex)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // used[v * palette + c]
    let mut used = vec![false; n * palette];
    'attempt: for _ in 0..RANDOM_PROPER_RESTARTS {
        rng.shuffle(&mut order);
        used.iter_mut().for_each(|u| *u = false);
        let mut edges = Vec::with_capacity(order.len());
        for &(i, j) in &order {
            let free = (0..palette).find(|&c| !used[i * palette + c] && !used[j * palette + c]);
            let Some(c) = free else { continue 'attempt };
            used[i * palette + c] = true;
            used[j * palette + c] = true;
            edges.push((i, j, c as Color));
        }
        return Ok(build_colored_graph(n, edges)?);
    }
    Err(GenError::PaletteTooSmall { palette, restarts: RANDOM_PROPER_RESTARTS })
}

/// `K_n` with every edge its own color.
pub fn rainbow_complete(n: usize) -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = edges.len() as Color;
            edges.push((i, j, c));
        }
    }
    build_colored_graph(n, edges).expect("distinct colors are always proper")
}
