//! Turning the long path into a cycle.
//!
//! With `A1` the first `a` and `A2` the last `a` vertices of the path
//! `v_0 .. v_{m-1}`, a helper edge `v_i v_k` between them closes the cycle
//! `v_i .. v_k` directly. Otherwise a first-graph edge `v_i v_{j+1}`
//! (`v_i ∈ A1`) and a second-graph edge `v_k v_j` (`v_k ∈ A2`) give the cycle
//! `v_i, v_{j+1}, .., v_k, v_j, v_{j-1}, .., v_{i+1}`, which still covers
//! every vertex from `v_i` to `v_k`.

use crate::graph::{ColoredGraph, Edge, Vertex};
use crate::oracle::verify_rainbow_cycle;

use super::split::SplitBundle;
use super::CycleError;

/// Helper graph roles tried in order: (first, second).
const ROLES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Direct { graph: usize, edge: Edge },
    Indirect { first: (usize, Edge), second: (usize, Edge) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedCycle {
    pub vertices: Vec<Vertex>,
    pub closure: Closure,
    /// Whether the path had to be read from its other end.
    pub reversed: bool,
}

impl ClosedCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn positions(n: usize, path: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in path.iter().enumerate() {
        pos[v] = k;
    }
    pos
}

/// Longest `v_i .. v_k` with an `x`-edge, `i < a`, `k >= m - a`.
fn direct(x: &ColoredGraph, path: &[Vertex], pos: &[usize], a: usize) -> Option<(usize, usize)> {
    let m = path.len();
    let mut best: Option<(usize, usize)> = None;
    for i in 0..a {
        for &(w, _) in x.neighbors(path[i]) {
            let k = pos[w];
            if k != usize::MAX && k >= m - a && k >= i + 2 && best.is_none_or(|(bi, bk)| k - i > bk - bi) {
                best = Some((i, k));
            }
        }
    }
    best
}

/// Longest indirect closure `(i, j, k)` with `i < j < j + 1 < k`, ties by
/// smaller `i` then smaller `j`.
fn indirect(
    x: &ColoredGraph,
    y: &ColoredGraph,
    path: &[Vertex],
    pos: &[usize],
    a: usize,
) -> Option<(usize, usize, usize)> {
    let m = path.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for j in a.saturating_sub(1)..m.saturating_sub(2) {
        let i = x.neighbors(path[j + 1]).iter().map(|&(w, _)| pos[w]).filter(|&i| i < a && i < j).min();
        let k = y
            .neighbors(path[j])
            .iter()
            .map(|&(w, _)| pos[w])
            .filter(|&k| k != usize::MAX && k >= m - a && k >= j + 2)
            .max();
        if let (Some(i), Some(k)) = (i, k) {
            if best.is_none_or(|(bi, _, bk)| k - i > bk - bi) {
                best = Some((i, j, k));
            }
        }
    }
    best
}

/// Closes the rainbow path `p1` into a rainbow cycle using helper edges.
///
/// The first role pair (first graph closes directly, then first and second
/// graphs close indirectly) is tried on the path and its reverse before the
/// other role pairs. The result is re-validated against the host.
pub fn close_cycle(bundle: &SplitBundle, p1: &[Vertex]) -> Result<ClosedCycle, CycleError> {
    let a = bundle.params.a;
    let m = p1.len();
    if m < 3 * a || m < 3 {
        return Err(CycleError::Precondition(format!(
            "path has {m} vertices, closing needs at least {}",
            (3 * a).max(3)
        )));
    }
    let n = bundle.host.n();
    let forward = p1.to_vec();
    let backward: Vec<Vertex> = p1.iter().rev().copied().collect();
    for (first, second) in ROLES {
        for (reversed, path) in [(false, &forward), (true, &backward)] {
            let pos = positions(n, path);
            let (x, y) = (&bundle.h[first], &bundle.h[second]);
            let found = if let Some((i, k)) = direct(x, path, &pos, a) {
                Some((path[i..=k].to_vec(), Closure::Direct { graph: first, edge: Edge::new(path[i], path[k]) }))
            } else if let Some((i, j, k)) = indirect(x, y, path, &pos, a) {
                let mut cycle = vec![path[i]];
                cycle.extend_from_slice(&path[j + 1..=k]);
                cycle.extend(path[i + 1..=j].iter().rev());
                let closure = Closure::Indirect {
                    first: (first, Edge::new(path[i], path[j + 1])),
                    second: (second, Edge::new(path[k], path[j])),
                };
                Some((cycle, closure))
            } else {
                None
            };
            if let Some((vertices, closure)) = found {
                verify_rainbow_cycle(&bundle.host, &vertices).map_err(|v| CycleError::InvalidCycle(v.to_string()))?;
                return Ok(ClosedCycle { vertices, closure, reversed });
            }
        }
    }
    Err(CycleError::NoClosure(format!(
        "no closing edges for a path of {m} vertices with a = {a}; helper edge counts {:?}",
        bundle.h.each_ref().map(|h| h.edge_count())
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::tests::crafted;

    const PATH: [(Vertex, Vertex); 8] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)];
    const P1: [Vertex; 9] = [0, 1, 2, 3, 4, 5, 6, 7, 8];

    #[test]
    fn direct_closure_trims_to_the_chosen_chord() {
        let b = crafted(9, 3, &PATH, [&[(1, 7)], &[], &[]]);
        let c = close_cycle(&b, &P1).unwrap();
        assert_eq!(c.vertices, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(c.closure, Closure::Direct { graph: 0, edge: Edge::new(1, 7) });
        assert!(c.len() + 2 * 3 >= P1.len());
    }

    #[test]
    fn indirect_closure_through_the_shifted_set() {
        let b = crafted(9, 3, &PATH, [&[(0, 4)], &[(3, 8)], &[]]);
        let c = close_cycle(&b, &P1).unwrap();
        assert_eq!(c.vertices, vec![0, 4, 5, 6, 7, 8, 3, 2, 1]);
        assert!(matches!(c.closure, Closure::Indirect { first: (0, _), second: (1, _) }));
        assert!(!c.reversed);
        assert!(crate::oracle::verify_rainbow_cycle(&b.host, &c.vertices).is_ok());
    }

    #[test]
    fn reversed_path_is_tried() {
        // Only reading the path from 8 makes 8-4 the first-graph edge of an indirect closure.
        let b = crafted(9, 3, &PATH, [&[(8, 4)], &[(0, 5)], &[]]);
        let c = close_cycle(&b, &P1).unwrap();
        assert!(c.reversed);
        assert_eq!(c.vertices, vec![8, 4, 3, 2, 1, 0, 5, 6, 7]);
    }

    #[test]
    fn short_paths_and_missing_edges_are_errors() {
        let b = crafted(9, 4, &PATH, [&[(1, 7)], &[], &[]]);
        assert!(matches!(close_cycle(&b, &P1), Err(CycleError::Precondition(_))));
        let b = crafted(9, 3, &PATH, [&[], &[], &[]]);
        assert!(matches!(close_cycle(&b, &P1), Err(CycleError::NoClosure(_))));
    }
}
