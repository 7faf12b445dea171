//! Rainbow path forests.
//!
//! A [`PathForest`] is a list of vertex-disjoint paths in a host graph whose
//! edges carry pairwise distinct colors. Singleton paths are allowed. The
//! submodules build forests greedily, rewrite them by swaps, search the swap
//! closure for fewer paths, and stitch spanning forests into Hamilton cycles.

mod greedy;
mod hamilton;
mod io;
mod minimize;
mod swap;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, Edge, GraphId, Vertex, VertexSet};

pub use greedy::{greedy_rainbow_forest, GreedyForest};
pub use hamilton::{hamilton_from_forest, HamiltonCycle};
pub use io::{parse_forest, write_forest};
pub use minimize::{swap_minimize, MinimizeOutcome, Optimality, SearchBudget};
pub use swap::{apply_swap, legal_swaps, Swap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("forest belongs to graph {forest}, not {graph}")]
    HostMismatch { forest: GraphId, graph: GraphId },
    #[error("path {0} has no vertices")]
    EmptyPath(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("vertex {0} appears twice")]
    RepeatedVertex(Vertex),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("color {color} used on {first} and {second}")]
    RepeatedColor { color: Color, first: Edge, second: Edge },
    #[error("illegal swap: {0}")]
    IllegalSwap(String),
    #[error("forest does not cover every vertex")]
    NotSpanning,
    #[error("host graph is not complete")]
    NotComplete,
    #[error("need at least 3 vertices for a cycle, got {0}")]
    NTooSmall(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Canonical form: every path starts at its smaller endpoint, paths sorted.
pub type CanonicalForest = Vec<Vec<Vertex>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathForest {
    host: GraphId,
    paths: Vec<Vec<Vertex>>,
}

impl PathForest {
    /// Wraps `paths` without checking them; see [`PathForest::validate`].
    pub fn new(host: GraphId, paths: Vec<Vec<Vertex>>) -> Self {
        Self { host, paths }
    }

    pub fn validated(g: &ColoredGraph, paths: Vec<Vec<Vertex>>) -> Result<Self, ForestError> {
        let f = Self::new(g.id(), paths);
        f.validate(g)?;
        Ok(f)
    }

    /// Every vertex of `g` as its own path.
    pub fn singletons(g: &ColoredGraph) -> Self {
        Self::new(g.id(), (0..g.n()).map(|v| vec![v]).collect())
    }

    pub fn host(&self) -> GraphId {
        self.host
    }

    /// Rebinds the forest to another graph with the same vertex set.
    pub fn with_host(mut self, host: GraphId) -> Self {
        self.host = host;
        self
    }

    pub fn paths(&self) -> &[Vec<Vertex>] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<Vec<Vertex>> {
        self.paths
    }

    /// `p(F)`.
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - self.paths.len()
    }

    pub fn covered(&self) -> VertexSet {
        self.paths.iter().flatten().copied().collect()
    }

    /// `U = V(G) \ V(F)`.
    pub fn uncovered(&self, n: usize) -> VertexSet {
        let mut mark = vec![false; n];
        for &v in self.paths.iter().flatten() {
            mark[v] = true;
        }
        (0..n).filter(|&v| !mark[v]).collect()
    }

    pub fn is_spanning(&self, n: usize) -> bool {
        self.vertex_count() == n && self.covered().len() == n
    }

    /// `A(F)`: endpoints of all paths (a singleton is its own endpoint).
    pub fn endpoints(&self) -> VertexSet {
        self.paths.iter().flat_map(|p| [p[0], p[p.len() - 1]]).collect()
    }

    /// Path edges with their colors in `g`. Panics if an edge is missing.
    pub fn edges(&self, g: &ColoredGraph) -> Vec<(Edge, Color)> {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2))
            .map(|w| {
                let c = g.color_of(w[0], w[1]).expect("forest edge missing from host");
                (Edge::new(w[0], w[1]), c)
            })
            .collect()
    }

    pub fn used_colors(&self, g: &ColoredGraph) -> BTreeSet<Color> {
        self.edges(g).into_iter().map(|(_, c)| c).collect()
    }

    pub fn canonical(&self) -> CanonicalForest {
        let mut out: Vec<Vec<Vertex>> = self
            .paths
            .iter()
            .map(|p| if p[0] <= p[p.len() - 1] { p.clone() } else { p.iter().rev().copied().collect() })
            .collect();
        out.sort();
        out
    }

    /// Disjointness, adjacency and rainbowness in `g`.
    pub fn validate(&self, g: &ColoredGraph) -> Result<(), ForestError> {
        if self.host != g.id() {
            return Err(ForestError::HostMismatch { forest: self.host, graph: g.id() });
        }
        let mut seen = vec![false; g.n()];
        let mut by_color: HashMap<Color, Edge> = HashMap::new();
        for (i, p) in self.paths.iter().enumerate() {
            if p.is_empty() {
                return Err(ForestError::EmptyPath(i));
            }
            for &v in p {
                if v >= g.n() {
                    return Err(ForestError::VertexOutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ForestError::RepeatedVertex(v));
                }
            }
            for w in p.windows(2) {
                let c = g.color_of(w[0], w[1]).ok_or(ForestError::NotAdjacent(w[0], w[1]))?;
                let e = Edge::new(w[0], w[1]);
                if let Some(first) = by_color.insert(c, e) {
                    return Err(ForestError::RepeatedColor { color: c, first, second: e });
                }
            }
        }
        Ok(())
    }
}

/// Position lookups for one forest: which path each vertex sits on, and which
/// forest edge carries each used color.
pub(crate) struct ForestIndex {
    /// `(path, position)` per vertex.
    pub place: Vec<Option<(usize, usize)>>,
    pub color_edge: HashMap<Color, Edge>,
}

impl ForestIndex {
    pub fn new(f: &PathForest, g: &ColoredGraph) -> Self {
        let mut place = vec![None; g.n()];
        let mut color_edge = HashMap::new();
        for (i, p) in f.paths.iter().enumerate() {
            for (k, &v) in p.iter().enumerate() {
                place[v] = Some((i, k));
            }
            for w in p.windows(2) {
                if let Some(c) = g.color_of(w[0], w[1]) {
                    color_edge.insert(c, Edge::new(w[0], w[1]));
                }
            }
        }
        Self { place, color_edge }
    }

    pub fn is_endpoint(&self, f: &PathForest, v: Vertex) -> bool {
        match self.place[v] {
            Some((i, k)) => k == 0 || k + 1 == f.paths[i].len(),
            None => false,
        }
    }
}
