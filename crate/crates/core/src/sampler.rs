//! Random color-class sampling and the checks that go with it: degree
//! concentration, pair density, nearly-rainbow pairs and partitions.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{edges_between, Color, ColoredGraph, GraphError, Vertex, VertexSet};
use crate::par;
use crate::rng::SplitMix64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("invalid sampling parameters: {0}")]
    InvalidParams(String),
    #[error("not a subgraph of the host: {0}")]
    NotSubgraph(String),
    #[error("vertex sets overlap at {0}")]
    OverlappingSets(Vertex),
    #[error("vertex sets must be nonempty")]
    EmptySet,
    #[error("part size {part} does not divide set size {size}")]
    IndivisibleSize { size: usize, part: usize },
    #[error("pair sizes {a} + {b} exceed n = {n}")]
    PairTooLarge { a: usize, b: usize, n: usize },
}

impl From<GraphError> for SamplerError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::OverlappingSets(v) => SamplerError::OverlappingSets(v),
            other => SamplerError::NotSubgraph(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleParams {
    /// Probability that a color class is kept.
    pub p: f64,
    /// Relative tolerance of every concentration check.
    pub epsilon: f64,
    pub seed: u64,
    /// Scale of the `C log n / p` set sizes used for pair checks.
    pub c: f64,
    /// Allowed minimum-degree deficit of the host as a fraction of `n`.
    pub delta: f64,
}

impl SampleParams {
    pub fn new(p: f64, epsilon: f64, seed: u64) -> Result<Self, SamplerError> {
        Self { p, epsilon, seed, c: 1.0, delta: 0.0 }.validated()
    }

    pub fn validated(self) -> Result<Self, SamplerError> {
        let bad = |m: &str| Err(SamplerError::InvalidParams(m.to_string()));
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad("p must lie in (0, 1]");
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad("epsilon must lie in (0, 1)");
        }
        if !(self.c > 0.0) {
            return bad("C must be positive");
        }
        if !(0.0..1.0).contains(&self.delta) {
            return bad("delta must lie in [0, 1)");
        }
        Ok(self)
    }

    /// Set sizes `(ceil(C log2 n / p), ceil(C (log2 n / p)^2))`, the second
    /// capped at `n / 3`, and the first at the second.
    pub fn pair_sizes(&self, n: usize) -> (usize, usize) {
        let l = (n.max(2) as f64).log2() / self.p;
        let b = ((self.c * l * l).ceil() as usize).min(n / 3).max(1);
        let a = ((self.c * l).ceil() as usize).min(b).max(1);
        (a, b)
    }
}

/// Keeps each color class of `g` independently with probability `p`.
///
/// One `bernoulli(p)` draw per color, in ascending color order, from
/// `SplitMix64::new(seed)`.
pub fn sample_color_subgraph(g: &ColoredGraph, params: &SampleParams) -> ColoredGraph {
    let mut rng = SplitMix64::new(params.seed);
    let keep = sample_colors(g.colors(), params.p, &mut rng);
    crate::graph::subgraph_by_colors(g, &keep)
}

/// The colors of `colors` (in the given order) that survive one coin flip each.
pub fn sample_colors(colors: impl Iterator<Item = Color>, p: f64, rng: &mut SplitMix64) -> Vec<Color> {
    colors.filter(|_| rng.bernoulli(p)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCheck {
    pub vertex: Vertex,
    pub host_degree: usize,
    pub degree: usize,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairCheck {
    pub a_size: usize,
    pub b_size: usize,
    pub observed: usize,
    pub threshold: f64,
    pub pass: bool,
}

impl PairCheck {
    fn new(a_size: usize, b_size: usize, observed: usize, p: f64, epsilon: f64) -> Self {
        let threshold = pair_threshold(a_size, b_size, p, epsilon);
        Self { a_size, b_size, observed, threshold, pass: observed as f64 >= threshold }
    }

    /// `observed / threshold`; below 1 means the check failed.
    pub fn margin(&self) -> f64 {
        self.observed as f64 / self.threshold
    }
}

fn pair_threshold(a: usize, b: usize, p: f64, epsilon: f64) -> f64 {
    (1.0 - epsilon) * p * (a * b) as f64
}

fn degree_band(host_degree: usize, p: f64, epsilon: f64) -> (f64, f64) {
    let mean = p * host_degree as f64;
    ((1.0 - epsilon) * mean, (1.0 + epsilon) * mean)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub p: f64,
    pub epsilon: f64,
    pub degree_ok: bool,
    pub degrees: Vec<DegreeCheck>,
    /// Vertex whose degree ratio `d_H(v) / (p d_G(v))` is furthest from 1.
    pub worst_vertex: Option<(Vertex, f64)>,
    pub pair_checks: Vec<PairCheck>,
}

impl ConcentrationReport {
    pub fn passing_vertices(&self) -> usize {
        self.degrees.iter().filter(|d| d.pass).count()
    }

    /// Recomputes every stored threshold from the stored inputs.
    pub fn is_consistent(&self) -> bool {
        let degrees = self.degrees.iter().all(|d| {
            let (lo, hi) = degree_band(d.host_degree, self.p, self.epsilon);
            lo == d.lower && hi == d.upper && d.pass == (lo <= d.degree as f64 && d.degree as f64 <= hi)
        });
        let pairs = self.pair_checks.iter().all(|c| {
            let t = pair_threshold(c.a_size, c.b_size, self.p, self.epsilon);
            t == c.threshold && c.pass == (c.observed as f64 >= t)
        });
        degrees && pairs && self.degree_ok == self.degrees.iter().all(|d| d.pass)
    }

    pub fn all_pairs_pass(&self) -> bool {
        self.pair_checks.iter().all(|c| c.pass)
    }

    /// Rows `check,param_a,param_b,observed,threshold,pass`. Each vertex gives a
    /// `degree_lower` and a `degree_upper` row (params: vertex, host degree);
    /// each pair gives a `pair` row (params: `|A|`, `|B|`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,param_a,param_b,observed,threshold,pass\n");
        for d in &self.degrees {
            let ok_lo = d.degree as f64 >= d.lower;
            let ok_hi = d.degree as f64 <= d.upper;
            out += &format!("degree_lower,{},{},{},{:.6},{}\n", d.vertex, d.host_degree, d.degree, d.lower, ok_lo);
            out += &format!("degree_upper,{},{},{},{:.6},{}\n", d.vertex, d.host_degree, d.degree, d.upper, ok_hi);
        }
        for c in &self.pair_checks {
            out += &format!("pair,{},{},{},{:.6},{}\n", c.a_size, c.b_size, c.observed, c.threshold, c.pass);
        }
        out
    }
}

/// Checks that `h` is an edge subgraph of `g` with matching colors.
pub fn check_subgraph(h: &ColoredGraph, g: &ColoredGraph) -> Result<(), SamplerError> {
    if h.n() != g.n() {
        return Err(SamplerError::NotSubgraph(format!("{} vertices vs {}", h.n(), g.n())));
    }
    for &(e, c) in h.edges() {
        if g.color_of(e.u, e.v) != Some(c) {
            return Err(SamplerError::NotSubgraph(format!("edge {e} with color {c}")));
        }
    }
    Ok(())
}

/// Per-vertex test of `d_H(v)` against the band `(1 ± epsilon) p d_G(v)`.
/// The report starts without pair checks; add them with [`check_pair_density`].
pub fn check_degree_concentration(
    h: &ColoredGraph,
    g: &ColoredGraph,
    params: &SampleParams,
) -> Result<ConcentrationReport, SamplerError> {
    check_subgraph(h, g)?;
    let mut worst: Option<(Vertex, f64)> = None;
    let degrees: Vec<DegreeCheck> = (0..g.n())
        .map(|v| {
            let host_degree = g.degree(v);
            let degree = h.degree(v);
            let (lower, upper) = degree_band(host_degree, params.p, params.epsilon);
            if host_degree > 0 {
                let ratio = degree as f64 / (params.p * host_degree as f64);
                if worst.is_none_or(|(_, r)| (ratio - 1.0).abs() > (r - 1.0).abs()) {
                    worst = Some((v, ratio));
                }
            }
            DegreeCheck {
                vertex: v,
                host_degree,
                degree,
                lower,
                upper,
                pass: lower <= degree as f64 && degree as f64 <= upper,
            }
        })
        .collect();
    Ok(ConcentrationReport {
        p: params.p,
        epsilon: params.epsilon,
        degree_ok: degrees.iter().all(|d| d.pass),
        degrees,
        worst_vertex: worst,
        pair_checks: Vec::new(),
    })
}

fn nonempty(a: &VertexSet, b: &VertexSet) -> Result<(), SamplerError> {
    if a.is_empty() || b.is_empty() {
        Err(SamplerError::EmptySet)
    } else {
        Ok(())
    }
}

/// Whether `E_G(A, B)` carries at least `(1 - epsilon) |A| |B|` distinct
/// colors, together with the number of distinct colors.
pub fn is_nearly_rainbow(
    g: &ColoredGraph,
    a: &VertexSet,
    b: &VertexSet,
    epsilon: f64,
) -> Result<(bool, usize), SamplerError> {
    nonempty(a, b)?;
    let colors: HashSet<Color> = edges_between(g, a, b)?.into_iter().map(|(_, c)| c).collect();
    let distinct = colors.len();
    Ok((distinct as f64 >= (1.0 - epsilon) * (a.len() * b.len()) as f64, distinct))
}

/// `e_H(A, B)` against `(1 - epsilon) p |A| |B|`.
pub fn check_pair_density(
    h: &ColoredGraph,
    a: &VertexSet,
    b: &VertexSet,
    params: &SampleParams,
) -> Result<PairCheck, SamplerError> {
    let observed = edges_between(h, a, b)?.len();
    Ok(PairCheck::new(a.len(), b.len(), observed, params.p, params.epsilon))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOutcome {
    pub a_parts: Vec<VertexSet>,
    pub b_parts: Vec<VertexSet>,
    /// Fraction of part pairs that are not nearly rainbow.
    pub bad_fraction: f64,
    pub within_epsilon: bool,
    /// Trial that produced this partition.
    pub trial: usize,
}

fn random_parts(set: &VertexSet, y: usize, rng: &mut SplitMix64) -> Vec<VertexSet> {
    let mut xs = set.as_slice().to_vec();
    rng.shuffle(&mut xs);
    xs.chunks(y).map(|c| VertexSet::new(c.iter().copied())).collect()
}

/// Best of `trials` uniformly random partitions of `A` and `B` into parts of
/// size `y`, scored by the fraction of part pairs that fail to be nearly
/// rainbow. Trial `t` draws from `SplitMix64::derive(seed, t)`; ties go to the
/// lowest trial.
pub fn partition_nearly_rainbow(
    g: &ColoredGraph,
    a: &VertexSet,
    b: &VertexSet,
    y: usize,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<PartitionOutcome, SamplerError> {
    nonempty(a, b)?;
    for s in [a, b] {
        if y == 0 || s.len() % y != 0 {
            return Err(SamplerError::IndivisibleSize { size: s.len(), part: y });
        }
    }
    if let Some(v) = a.intersection(b).next() {
        return Err(SamplerError::OverlappingSets(v));
    }
    let scored = par::map_range(0..trials.max(1), |t| {
        let mut rng = SplitMix64::derive(seed, t as u64);
        let a_parts = random_parts(a, y, &mut rng);
        let b_parts = random_parts(b, y, &mut rng);
        let mut bad = 0;
        for ap in &a_parts {
            for bp in &b_parts {
                if !is_nearly_rainbow(g, ap, bp, epsilon).expect("parts are disjoint").0 {
                    bad += 1;
                }
            }
        }
        let frac = bad as f64 / (a_parts.len() * b_parts.len()) as f64;
        (frac, a_parts, b_parts)
    });
    let (trial, (bad_fraction, a_parts, b_parts)) =
        scored.into_iter().enumerate().min_by(|x, y| x.1 .0.total_cmp(&y.1 .0).then(x.0.cmp(&y.0))).unwrap();
    Ok(PartitionOutcome { a_parts, b_parts, bad_fraction, within_epsilon: bad_fraction <= epsilon, trial })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairScan {
    /// The pair with the smallest margin.
    pub worst_a: VertexSet,
    pub worst_b: VertexSet,
    pub worst: PairCheck,
    /// Pairs examined, structured candidates included.
    pub examined: usize,
    pub violations: usize,
}

impl PairScan {
    pub fn min_margin(&self) -> f64 {
        self.worst.margin()
    }

    pub fn violated(&self) -> bool {
        self.violations > 0
    }
}

fn count_between(adj: &[FixedBitSet], a: &[Vertex], b: &FixedBitSet) -> usize {
    a.iter().map(|&x| adj[x].intersection(b).count()).sum()
}

fn bits(n: usize, xs: &[Vertex]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    xs.iter().for_each(|&x| s.insert(x));
    s
}

/// Searches for disjoint pairs `|A| = a`, `|B| = b` with few `H`-edges.
///
/// Examines `samples` uniformly random pairs (sample `i` drawn from
/// `SplitMix64::derive(seed, i)`) plus two structured candidates built from
/// the lowest-`H`-degree vertices: `A` the `a` lowest, and `B` either the next
/// `b` lowest or the `b` outside vertices with fewest neighbors in `A`.
pub fn adversarial_pair_scan(
    h: &ColoredGraph,
    g: &ColoredGraph,
    a: usize,
    b: usize,
    params: &SampleParams,
    samples: usize,
    seed: u64,
) -> Result<PairScan, SamplerError> {
    let n = g.n();
    check_subgraph(h, g)?;
    if a == 0 || b == 0 {
        return Err(SamplerError::EmptySet);
    }
    if a + b > n {
        return Err(SamplerError::PairTooLarge { a, b, n });
    }
    let adj = h.adjacency_bits();
    let score = |av: &[Vertex], bv: &[Vertex]| {
        let observed = count_between(&adj, av, &bits(n, bv));
        PairCheck::new(a, b, observed, params.p, params.epsilon)
    };

    let mut candidates: Vec<(Vec<Vertex>, Vec<Vertex>)> = Vec::new();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (h.degree(v), v));
    let low_a = by_degree[..a].to_vec();
    candidates.push((low_a.clone(), by_degree[a..a + b].to_vec()));
    let a_bits = bits(n, &low_a);
    let mut outside: Vec<Vertex> = (0..n).filter(|v| !a_bits.contains(*v)).collect();
    outside.sort_by_key(|&v| (adj[v].intersection(&a_bits).count(), v));
    candidates.push((low_a, outside[..b].to_vec()));

    let all: Vec<Vertex> = (0..n).collect();
    let structured: Vec<PairCheck> = candidates.iter().map(|(x, y)| score(x, y)).collect();
    let sampled: Vec<PairCheck> = par::map_range(0..samples, |i| {
        let mut rng = SplitMix64::derive(seed, i as u64);
        let pick = rng.sample(&all, a + b);
        score(&pick[..a], &pick[a..])
    });

    let mut violations = 0;
    let mut worst: Option<(usize, &PairCheck)> = None;
    for (i, c) in structured.iter().chain(sampled.iter()).enumerate() {
        if !c.pass {
            violations += 1;
        }
        if worst.is_none_or(|(_, w)| c.observed < w.observed) {
            worst = Some((i, c));
        }
    }
    let (wi, wc) = worst.unwrap();
    let (wa, wb) = if wi < candidates.len() {
        candidates[wi].clone()
    } else {
        let mut rng = SplitMix64::derive(seed, (wi - candidates.len()) as u64);
        let pick = rng.sample(&all, a + b);
        (pick[..a].to_vec(), pick[a..].to_vec())
    };
    Ok(PairScan {
        worst_a: VertexSet::new(wa),
        worst_b: VertexSet::new(wb),
        worst: wc.clone(),
        examined: structured.len() + sampled.len(),
        violations,
    })
}
