//! Validators that share no code with the constructions they check.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{Color, ColoredGraph, Vertex};

/// The first predicate a candidate cycle or forest fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooShort(usize),
    VertexOutOfRange(Vertex),
    RepeatedVertex(Vertex),
    NotAdjacent(Vertex, Vertex),
    RepeatedColor(Color),
    EmptyPath(usize),
    /// A Hamilton cycle of this many vertices was expected.
    NotSpanning(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooShort(k) => write!(f, "a cycle needs at least 3 vertices, got {k}"),
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::RepeatedVertex(v) => write!(f, "vertex {v} repeated"),
            Violation::NotAdjacent(u, v) => write!(f, "{u} and {v} are not adjacent"),
            Violation::RepeatedColor(c) => write!(f, "color {c} repeated"),
            Violation::EmptyPath(i) => write!(f, "path {i} is empty"),
            Violation::NotSpanning(n) => write!(f, "cycle does not visit all {n} vertices"),
        }
    }
}

struct Walker<'g> {
    g: &'g ColoredGraph,
    seen: Vec<bool>,
    colors: HashSet<Color>,
}

impl<'g> Walker<'g> {
    fn new(g: &'g ColoredGraph) -> Self {
        Self { g, seen: vec![false; g.n()], colors: HashSet::new() }
    }

    fn vertex(&mut self, v: Vertex) -> Result<(), Violation> {
        if v >= self.g.n() {
            return Err(Violation::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut self.seen[v], true) {
            return Err(Violation::RepeatedVertex(v));
        }
        Ok(())
    }

    fn edge(&mut self, u: Vertex, v: Vertex) -> Result<(), Violation> {
        let c = self.g.color_of(u, v).ok_or(Violation::NotAdjacent(u, v))?;
        if !self.colors.insert(c) {
            return Err(Violation::RepeatedColor(c));
        }
        Ok(())
    }
}

/// Checks that `cycle` (closing edge from the last vertex back to the first)
/// has distinct vertices, consecutive adjacency and distinct edge colors.
pub fn verify_rainbow_cycle(g: &ColoredGraph, cycle: &[Vertex]) -> Result<(), Violation> {
    if cycle.len() < 3 {
        return Err(Violation::TooShort(cycle.len()));
    }
    let mut w = Walker::new(g);
    for &v in cycle {
        w.vertex(v)?;
    }
    for i in 0..cycle.len() {
        w.edge(cycle[i], cycle[(i + 1) % cycle.len()])?;
    }
    Ok(())
}

/// Checks that `cycle` visits every vertex of `g` exactly once along host
/// edges and returns the number of distinct colors on it.
pub fn verify_hamilton_cycle(g: &ColoredGraph, cycle: &[Vertex]) -> Result<usize, Violation> {
    if cycle.len() < 3 {
        return Err(Violation::TooShort(cycle.len()));
    }
    if cycle.len() != g.n() {
        return Err(Violation::NotSpanning(g.n()));
    }
    let mut w = Walker::new(g);
    for &v in cycle {
        w.vertex(v)?;
    }
    let mut colors = HashSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        colors.insert(g.color_of(u, v).ok_or(Violation::NotAdjacent(u, v))?);
    }
    Ok(colors.len())
}

/// Checks that `paths` are nonempty, vertex-disjoint, follow edges of `g`,
/// and use every color at most once across all paths.
pub fn verify_forest(g: &ColoredGraph, paths: &[Vec<Vertex>]) -> Result<(), Violation> {
    let mut w = Walker::new(g);
    for (i, p) in paths.iter().enumerate() {
        if p.is_empty() {
            return Err(Violation::EmptyPath(i));
        }
        for &v in p {
            w.vertex(v)?;
        }
    }
    for p in paths {
        for pair in p.windows(2) {
            w.edge(pair[0], pair[1])?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::tests::k4;

    #[test]
    fn k4_cycles() {
        let g = k4();
        assert_eq!(verify_rainbow_cycle(&g, &[0, 1, 2]), Ok(()));
        assert_eq!(verify_rainbow_cycle(&g, &[0, 1, 2, 3]), Err(Violation::RepeatedColor(1)));
        assert_eq!(verify_rainbow_cycle(&g, &[0, 1, 0]), Err(Violation::RepeatedVertex(0)));
        assert_eq!(verify_rainbow_cycle(&g, &[0, 1]), Err(Violation::TooShort(2)));
        assert_eq!(verify_rainbow_cycle(&g, &[0, 1, 9]), Err(Violation::VertexOutOfRange(9)));
    }

    #[test]
    fn k4_hamilton_cycles_have_two_colors() {
        let g = k4();
        for cycle in [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]] {
            assert_eq!(verify_hamilton_cycle(&g, &cycle), Ok(2));
        }
        assert_eq!(verify_hamilton_cycle(&g, &[0, 1, 2]), Err(Violation::NotSpanning(4)));
        assert_eq!(verify_hamilton_cycle(&g, &[0, 1, 2, 2]), Err(Violation::RepeatedVertex(2)));
    }

    #[test]
    fn forests() {
        let g = k4();
        assert_eq!(verify_forest(&g, &[vec![1, 0, 2], vec![3]]), Ok(()));
        assert_eq!(verify_forest(&g, &[vec![0, 1], vec![2, 3]]), Err(Violation::RepeatedColor(1)));
        assert_eq!(verify_forest(&g, &[vec![0, 1], vec![1]]), Err(Violation::RepeatedVertex(1)));
        assert_eq!(verify_forest(&g, &[vec![]]), Err(Violation::EmptyPath(0)));
        let path = crate::graph::build_colored_graph(3, [(0, 1, 0)]).unwrap();
        assert_eq!(verify_forest(&path, &[vec![0, 2]]), Err(Violation::NotAdjacent(0, 2)));
    }
}
