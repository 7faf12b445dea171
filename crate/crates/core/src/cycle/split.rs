use crate::graph::{remove_color_classes, subgraph_by_colors, Color, ColoredGraph};
use crate::rng::SplitMix64;
use crate::sampler::sample_colors;

use super::CycleError;

/// Parameters of the long-cycle pipeline for a host on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitParams {
    pub n: usize,
    pub c: f64,
    /// Probability of keeping a color class in each sampling round.
    pub p: f64,
    /// Minimum degree and small-set size of the expander condition.
    pub a: usize,
    /// Large-set size of the expander condition.
    pub b: usize,
    /// Allowed degree deficit of the forest graph, as a fraction of `n`.
    pub delta: f64,
    /// Allowed number of forest paths, as a fraction of `n`.
    pub gamma: f64,
}

/// Upper cap on `delta`.
pub const DELTA_CAP: f64 = 0.125;

impl SplitParams {
    /// `p = C ln n / sqrt n`, `a = ceil(sqrt n)` unless overridden,
    /// `b = max(a, floor(n / 4))`, `delta = min(4p, 1/8)`,
    /// `gamma = 1 / (C ln n sqrt n)`.
    pub fn derive(n: usize, c: f64, a_override: Option<usize>) -> Result<Self, CycleError> {
        if !(c > 0.0) || n < 2 {
            return Err(CycleError::Precondition(format!("need C > 0 and n >= 2, got C = {c}, n = {n}")));
        }
        let ln = (n as f64).ln();
        let root = (n as f64).sqrt();
        let p = c * ln / root;
        if p >= 1.0 {
            return Err(CycleError::DegenerateP(p));
        }
        let a = a_override.unwrap_or(root.ceil() as usize).max(1);
        Ok(Self { n, c, p, a, b: a.max(n / 4), delta: (4.0 * p).min(DELTA_CAP), gamma: 1.0 / (c * ln * root) })
    }

    /// Length at which path extension stops: `n - 4 delta n - a`, raised to
    /// `3a` so that the path can always be handed to the closing step.
    pub fn target_len(&self) -> f64 {
        let n = self.n as f64;
        (n - 4.0 * self.delta * n - self.a as f64).max(3.0 * self.a as f64)
    }
}

/// Degrees of one sampled graph against the mean `p (n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundDegrees {
    pub min: usize,
    pub max: usize,
    pub expected: f64,
}

impl RoundDegrees {
    fn of(h: &ColoredGraph, p: f64) -> Self {
        let degrees = (0..h.n()).map(|v| h.degree(v));
        Self {
            min: degrees.clone().min().unwrap_or(0),
            max: degrees.max().unwrap_or(0),
            expected: p * (h.n() as f64 - 1.0),
        }
    }

    /// All degrees within `(1 ± tolerance) p (n - 1)`.
    pub fn within(&self, tolerance: f64) -> bool {
        self.min as f64 >= (1.0 - tolerance) * self.expected && self.max as f64 <= (1.0 + tolerance) * self.expected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub round: usize,
    /// Which helper graph (0, 1 or 2) lost the class.
    pub graph: usize,
    pub color: Color,
}

/// The host split into a forest graph `g` and three helper graphs, all
/// spanning, pairwise edge-disjoint and with pairwise disjoint color sets.
#[derive(Debug, Clone)]
pub struct SplitBundle {
    pub host: ColoredGraph,
    pub g: ColoredGraph,
    pub h: [ColoredGraph; 3],
    pub params: SplitParams,
    pub degrees: [RoundDegrees; 3],
    pub removal_log: Vec<Removal>,
}

impl SplitBundle {
    /// Removes a color class from helper graph `graph` and logs it.
    pub fn remove_class(&mut self, round: usize, graph: usize, color: Color) {
        self.h[graph] = remove_color_classes(&self.h[graph], &[color]);
        self.removal_log.push(Removal { round, graph, color });
    }

    /// Checks the partition identities against the host: color sets are
    /// pairwise disjoint and, together with the removed classes, the four
    /// edge sets are exactly the host's edges.
    pub fn partitions_host(&self) -> bool {
        let parts = [&self.g, &self.h[0], &self.h[1], &self.h[2]];
        let mut owner = std::collections::HashMap::new();
        for (i, part) in parts.iter().enumerate() {
            for c in part.colors() {
                if owner.insert(c, i).is_some() {
                    return false;
                }
            }
            for &(e, c) in part.edges() {
                if self.host.color_of(e.u, e.v) != Some(c) {
                    return false;
                }
            }
        }
        for r in &self.removal_log {
            if owner.insert(r.color, 1 + r.graph).is_some() {
                return false;
            }
        }
        let kept: usize = parts.iter().map(|p| p.edge_count()).sum();
        let removed: usize = self.removal_log.iter().map(|r| self.host.class(r.color).len()).sum();
        kept + removed == self.host.edge_count()
    }
}

/// Three sequential sampling rounds: `H1` keeps each color class of the
/// host with probability `p`, `H2` does the same on what is left, then `H3`;
/// the remainder is `G`. Round `j` draws from `SplitMix64::derive(seed, j)`.
pub fn split_four(host: &ColoredGraph, c: f64, seed: u64) -> Result<SplitBundle, CycleError> {
    let params = SplitParams::derive(host.n(), c, None)?;
    Ok(split_with_params(host, params, seed))
}

pub fn split_with_params(host: &ColoredGraph, params: SplitParams, seed: u64) -> SplitBundle {
    let mut rest = host.clone();
    let mut hs = Vec::with_capacity(3);
    for round in 1..=3u64 {
        let mut rng = SplitMix64::derive(seed, round);
        let kept = sample_colors(rest.colors(), params.p, &mut rng);
        hs.push(subgraph_by_colors(&rest, &kept));
        rest = remove_color_classes(&rest, &kept);
    }
    let h: [ColoredGraph; 3] = hs.try_into().expect("three rounds");
    SplitBundle {
        host: host.clone(),
        g: rest,
        degrees: [0, 1, 2].map(|j| RoundDegrees::of(&h[j], params.p)),
        h,
        params,
        removal_log: Vec::new(),
    }
}
