use std::collections::HashSet;

use log::warn;

use crate::graph::{ColoredGraph, Vertex, VertexSet};

use super::PathForest;

/// Result of [`greedy_rainbow_forest`] with the targets it was measured against.
#[derive(Debug, Clone)]
pub struct GreedyForest {
    pub forest: PathForest,
    pub gamma: f64,
    pub delta: f64,
    /// `delta >= gamma` and `3 gamma delta - gamma^2 / 2 > 1/n`.
    pub hypothesis_ok: bool,
    /// `min_degree(g) >= (1 - delta) n`.
    pub min_degree_ok: bool,
    /// At most `gamma n` paths.
    pub paths_ok: bool,
    /// At least `(1 - 4 delta) n` edges.
    pub edges_ok: bool,
    pub uncovered: VertexSet,
}

impl GreedyForest {
    pub fn targets_met(&self) -> bool {
        self.paths_ok && self.edges_ok
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Merge-greedy rainbow path forest: start from singletons and keep applying
/// the lexicographically smallest pure-addition swap `(x, y)`, `x < y`.
///
/// Pure additions only ever become illegal as the forest grows (endpoints turn
/// interior, colors get used, paths merge), so a single pass over the pairs in
/// lexicographic order applies exactly that sequence.
///
/// The returned paths are sorted longest first (ties by smaller first vertex),
/// each oriented from its smaller endpoint.
pub fn greedy_rainbow_forest(g: &ColoredGraph, gamma: f64, delta: f64) -> GreedyForest {
    let n = g.n();
    let nf = n as f64;
    let hypothesis_ok = delta >= gamma && 3.0 * gamma * delta - gamma * gamma / 2.0 > 1.0 / nf;
    if !hypothesis_ok {
        warn!("greedy forest: parameters gamma={gamma}, delta={delta} violate 3*gamma*delta - gamma^2/2 > 1/n for n={n}");
    }
    let min_degree_ok = g.min_degree() as f64 >= (1.0 - delta) * nf;

    let mut deg = vec![0u8; n];
    let mut dsu = Dsu((0..n).collect());
    let mut used = HashSet::new();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for x in 0..n {
        for &(y, c) in g.neighbors(x) {
            if deg[x] == 2 {
                break;
            }
            if y < x || deg[y] == 2 || used.contains(&c) {
                continue;
            }
            let (rx, ry) = (dsu.find(x), dsu.find(y));
            if rx == ry {
                continue;
            }
            dsu.0[rx] = ry;
            used.insert(c);
            deg[x] += 1;
            deg[y] += 1;
            adj[x].push(y);
            adj[y].push(x);
        }
    }

    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for start in 0..n {
        if seen[start] || deg[start] == 2 {
            continue;
        }
        let mut path = vec![start];
        seen[start] = true;
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            path.push(next);
            seen[next] = true;
            prev = cur;
            cur = next;
        }
        paths.push(path);
    }
    paths.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let forest = PathForest::new(g.id(), paths);
    let paths_ok = forest.path_count() as f64 <= gamma * nf;
    let edges_ok = forest.edge_count() as f64 >= (1.0 - 4.0 * delta) * nf;
    GreedyForest {
        uncovered: forest.uncovered(n),
        forest,
        gamma,
        delta,
        hypothesis_ok,
        min_degree_ok,
        paths_ok,
        edges_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::tests::k4;
    use crate::gen::{rainbow_complete, random_proper, round_robin_even};
    use crate::graph::build_colored_graph;

    #[test]
    fn rainbow_host_gives_hamilton_path() {
        for n in [2, 3, 7, 20] {
            let g = rainbow_complete(n);
            let r = greedy_rainbow_forest(&g, 0.5, 0.5);
            assert_eq!(r.forest.path_count(), 1, "n={n}");
            assert_eq!(r.forest.edge_count(), n - 1);
            r.forest.validate(&g).unwrap();
        }
    }

    #[test]
    fn k4_factorization() {
        // No rainbow Hamilton path exists here (its two end edges would form a
        // perfect matching, i.e. one color class), so two edges is the maximum.
        let g = k4();
        let r = greedy_rainbow_forest(&g, 0.5, 0.5);
        r.forest.validate(&g).unwrap();
        assert_eq!(r.forest.edge_count(), 2);
        assert_eq!(r.forest.path_count(), 2);
        assert!(r.forest.is_spanning(4));
    }

    #[test]
    fn single_edge() {
        let g = build_colored_graph(2, [(0, 1, 0)]).unwrap();
        let r = greedy_rainbow_forest(&g, 0.5, 0.5);
        assert_eq!(r.forest.paths(), &[vec![0, 1]]);
    }

    #[test]
    fn result_is_maximal_and_valid() {
        for seed in 0..20 {
            let g = random_proper(12, 3, seed).unwrap();
            let r = greedy_rainbow_forest(&g, 0.1, 0.2);
            r.forest.validate(&g).unwrap();
            assert!(r.forest.is_spanning(12));
            assert!(crate::forest::legal_swaps(&r.forest, &g).iter().all(|s| s.removed.is_some()));
        }
    }

    #[test]
    fn hypothesis_flag() {
        let g = round_robin_even(64).unwrap();
        assert!(!greedy_rainbow_forest(&g, 0.001, 0.0005).hypothesis_ok);
        assert!(greedy_rainbow_forest(&g, 0.1, 0.2).hypothesis_ok);
    }
}
