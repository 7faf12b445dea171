//! Properly edge-colored graphs.
//!
//! Vertices are the dense integers `0..n`. Colors are arbitrary `u32` ids
//! chosen by whoever builds the graph; subgraphs keep the ids of their host so
//! color sets of different subgraphs can be compared directly.

mod io;
mod vertex_set;

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use io::{parse_graph, write_graph};
pub use vertex_set::VertexSet;

pub type Vertex = usize;
pub type Color = u32;

/// Unordered vertex pair stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Content hash of a graph (FNV-1a over `n` and the sorted colored edge list).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(pub u64);

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0} listed twice")]
    DuplicateEdge(Edge),
    #[error("improper coloring at vertex {vertex}: edges {first} and {second} both have color {color}")]
    ImproperColoring { vertex: Vertex, first: Edge, second: Edge, color: Color },
    #[error("vertex sets overlap at {0}")]
    OverlappingSets(Vertex),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple graph with a proper edge coloring and a color-class index.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    id: GraphId,
    edges: Vec<(Edge, Color)>,
    adj: Vec<Vec<(Vertex, Color)>>,
    classes: BTreeMap<Color, Vec<Edge>>,
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("n", &self.n)
            .field("id", &self.id)
            .field("edges", &self.edges.len())
            .field("colors", &self.classes.len())
            .finish()
    }
}

/// Validate and index a colored edge list.
pub fn build_colored_graph(
    n: usize,
    colored_edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
) -> Result<ColoredGraph, GraphError> {
    let mut edges = Vec::new();
    for (a, b, c) in colored_edges {
        for x in [a, b] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        edges.push((Edge::new(a, b), c));
    }
    edges.sort_unstable();
    for w in edges.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(GraphError::DuplicateEdge(w[0].0));
        }
    }
    ColoredGraph::from_sorted(n, edges)
}

impl ColoredGraph {
    /// `edges` must be sorted and free of duplicates; properness is checked.
    fn from_sorted(n: usize, edges: Vec<(Edge, Color)>) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<(Vertex, Color)>> = vec![Vec::new(); n];
        for &(e, c) in &edges {
            adj[e.u].push((e.v, c));
            adj[e.v].push((e.u, c));
        }
        // Edges are sorted, so every adjacency list is sorted by neighbor already.
        let mut seen: Vec<Color> = Vec::new();
        for (v, list) in adj.iter().enumerate() {
            seen.clear();
            seen.extend(list.iter().map(|&(_, c)| c));
            seen.sort_unstable();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                let color = w[0];
                let mut hits = list.iter().filter(|&&(_, c)| c == color);
                let first = Edge::new(v, hits.next().unwrap().0);
                let second = Edge::new(v, hits.next().unwrap().0);
                return Err(GraphError::ImproperColoring { vertex: v, first, second, color });
            }
        }
        let mut classes: BTreeMap<Color, Vec<Edge>> = BTreeMap::new();
        for &(e, c) in &edges {
            classes.entry(c).or_default().push(e);
        }
        let id = fingerprint(n, &edges);
        Ok(Self { n, id, edges, adj, classes })
    }

    /// Subgraph of `self` keeping the edges accepted by `keep`; properness is
    /// inherited so no re-validation is needed.
    fn filtered(&self, mut keep: impl FnMut(Color) -> bool) -> Self {
        let edges: Vec<_> = self.edges.iter().copied().filter(|&(_, c)| keep(c)).collect();
        Self::from_sorted(self.n, edges).expect("subgraph of a proper coloring is proper")
    }

    pub fn edgeless(n: usize) -> Self {
        Self::from_sorted(n, Vec::new()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Colored edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[(Edge, Color)] {
        &self.edges
    }

    /// Neighbors of `v` with the color of the connecting edge, sorted by neighbor.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn color_of(&self, a: Vertex, b: Vertex) -> Option<Color> {
        let list = self.adj.get(a)?;
        list.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.color_of(a, b).is_some()
    }

    /// Colors that appear on at least one edge, ascending.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.classes.keys().copied()
    }

    pub fn color_count(&self) -> usize {
        self.classes.len()
    }

    /// Edges of one color class (empty if the color is absent).
    pub fn class(&self, c: Color) -> &[Edge] {
        self.classes.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn classes(&self) -> &BTreeMap<Color, Vec<Edge>> {
        &self.classes
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// The color classes as a canonical partition of the edge set, ignoring
    /// the color ids themselves.
    pub fn color_partition(&self) -> Vec<Vec<Edge>> {
        let mut parts: Vec<Vec<Edge>> = self.classes.values().cloned().collect();
        parts.sort();
        parts
    }

    /// Adjacency rows as bitsets, for bulk neighborhood arithmetic.
    pub fn adjacency_bits(&self) -> Vec<FixedBitSet> {
        self.adj
            .iter()
            .map(|list| {
                let mut row = FixedBitSet::with_capacity(self.n);
                for &(w, _) in list {
                    row.insert(w);
                }
                row
            })
            .collect()
    }
}

fn fingerprint(n: usize, edges: &[(Edge, Color)]) -> GraphId {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(n as u64);
    for &(e, c) in edges {
        eat(e.u as u64);
        eat(e.v as u64);
        eat(c as u64);
    }
    GraphId(h)
}

fn check_disjoint(a: &VertexSet, b: &VertexSet) -> Result<(), GraphError> {
    match a.intersection(b).next() {
        Some(v) => Err(GraphError::OverlappingSets(v)),
        None => Ok(()),
    }
}

/// `E_G(A, B)`: edges with one endpoint in each of the disjoint sets `a`, `b`.
pub fn edges_between(g: &ColoredGraph, a: &VertexSet, b: &VertexSet) -> Result<Vec<(Edge, Color)>, GraphError> {
    check_disjoint(a, b)?;
    let mut out = Vec::new();
    for x in a.iter() {
        for &(y, c) in g.neighbors(x) {
            if b.contains(y) {
                out.push((Edge::new(x, y), c));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `e_G(A, B)`.
pub fn count_edges_between(g: &ColoredGraph, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
    edges_between(g, a, b).map(|e| e.len())
}

/// `N_G(U)`, the union of the neighborhoods of the members of `u`.
pub fn neighborhood(g: &ColoredGraph, u: &VertexSet) -> VertexSet {
    let mut out: Vec<Vertex> = u.iter().flat_map(|x| g.neighbors(x).iter().map(|&(y, _)| y)).collect();
    out.sort_unstable();
    out.dedup();
    VertexSet::from_sorted_unchecked(out)
}

/// `g` with every edge whose color is listed removed. Unknown colors are ignored.
pub fn remove_color_classes(g: &ColoredGraph, colors: &[Color]) -> ColoredGraph {
    let drop: std::collections::HashSet<Color> = colors.iter().copied().collect();
    g.filtered(|c| !drop.contains(&c))
}

/// Spanning subgraph of `g` with exactly the edges whose color is listed.
pub fn subgraph_by_colors(g: &ColoredGraph, colors: &[Color]) -> ColoredGraph {
    let keep: std::collections::HashSet<Color> = colors.iter().copied().collect();
    g.filtered(|c| keep.contains(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn k4() -> ColoredGraph {
        build_colored_graph(4, [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)]).unwrap()
    }

    fn vs(xs: &[Vertex]) -> VertexSet {
        VertexSet::new(xs.iter().copied())
    }

    #[test]
    fn triangle_builds() {
        let g = build_colored_graph(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        assert_eq!(g.color_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn improper_coloring_reported_at_shared_vertex() {
        let err = build_colored_graph(3, [(0, 1, 1), (1, 2, 1)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::ImproperColoring { vertex: 1, first: Edge::new(0, 1), second: Edge::new(1, 2), color: 1 }
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(build_colored_graph(3, [(0, 1, 1), (1, 0, 2)]), Err(GraphError::DuplicateEdge(_))));
        assert!(matches!(build_colored_graph(3, [(1, 1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(matches!(build_colored_graph(3, [(0, 3, 1)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })));
    }

    #[test]
    fn k4_factorization_classes_are_perfect_matchings() {
        let g = k4();
        for class in g.classes().values() {
            assert_eq!(class.len(), 2);
        }
        assert_eq!(g.color_of(3, 0), Some(3));
        assert_eq!(g.color_of(0, 0), None);
    }

    #[test]
    fn edges_between_examples() {
        let g = k4();
        let e = edges_between(&g, &vs(&[0, 1]), &vs(&[2, 3])).unwrap();
        let pairs: Vec<_> = e.iter().map(|(e, _)| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(count_edges_between(&g, &vs(&[0]), &vs(&[])).unwrap(), 0);
        assert_eq!(count_edges_between(&g, &vs(&[0]), &vs(&[1, 2])).unwrap(), 2);
        assert_eq!(edges_between(&g, &vs(&[0, 1]), &vs(&[1])), Err(GraphError::OverlappingSets(1)));
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(neighborhood(&k4(), &vs(&[0])), vs(&[1, 2, 3]));
        assert!(neighborhood(&ColoredGraph::edgeless(3), &vs(&[0, 1])).is_empty());
        let path = build_colored_graph(3, [(0, 1, 0), (1, 2, 1)]).unwrap();
        assert_eq!(neighborhood(&path, &vs(&[0, 2])), vs(&[1]));
    }

    #[test]
    fn class_removal_examples() {
        let g = k4();
        let h = remove_color_classes(&g, &[1]);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.min_degree(), 2);
        assert_eq!(remove_color_classes(&g, &[]), g);
        assert_eq!(remove_color_classes(&g, &[1, 2, 3, 99]).edge_count(), 0);

        assert_eq!(subgraph_by_colors(&g, &[1, 2, 3]), g);
        assert_eq!(subgraph_by_colors(&g, &[]).edge_count(), 0);
        let m = subgraph_by_colors(&g, &[2]);
        assert_eq!(m.edges().iter().map(|&(e, _)| e).collect::<Vec<_>>(), vec![Edge::new(0, 2), Edge::new(1, 3)]);
    }

    fn arb_graph() -> impl Strategy<Value = ColoredGraph> {
        (2usize..9, any::<u64>())
            .prop_map(|(n, seed)| crate::gen::random_proper(n, n, seed).expect("large palette always succeeds"))
    }

    proptest! {
        #[test]
        fn classes_are_matchings(g in arb_graph()) {
            for class in g.classes().values() {
                let mut ends: Vec<Vertex> = class.iter().flat_map(|e| [e.u, e.v]).collect();
                let len = ends.len();
                ends.sort_unstable();
                ends.dedup();
                prop_assert_eq!(ends.len(), len);
            }
            let total: usize = g.classes().values().map(Vec::len).sum();
            prop_assert_eq!(total, g.edge_count());
        }

        #[test]
        fn removal_matches_complement_selection(g in arb_graph(), mask in any::<u64>()) {
            let colors: Vec<Color> = g.colors().collect();
            let (drop, keep): (Vec<Color>, Vec<Color>) =
                colors.iter().partition(|&&c| mask >> (c % 64) & 1 == 1);
            prop_assert_eq!(remove_color_classes(&g, &drop), subgraph_by_colors(&g, &keep));
        }

        #[test]
        fn edge_count_between_is_neighborhood_sum(g in arb_graph(), mask in any::<u32>()) {
            let n = g.n();
            let a = VertexSet::new((0..n).filter(|v| mask >> v & 1 == 1));
            let b = VertexSet::new((0..n).filter(|v| mask >> (v + 16) & 1 == 1 && !a.contains(*v)));
            let direct = count_edges_between(&g, &a, &b).unwrap();
            let summed: usize = a
                .iter()
                .map(|v| neighborhood(&g, &VertexSet::new([v])).intersection(&b).count())
                .sum();
            prop_assert_eq!(direct, summed);
        }
    }
}
