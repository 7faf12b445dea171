//! Exhaustive backtracking references for tiny graphs.

use crate::graph::{ColoredGraph, Vertex};
use crate::par;

use super::OracleError;

/// Largest `n` accepted by [`brute_longest_rainbow_cycle`].
pub const CYCLE_CAP: usize = 11;
/// Largest `n` accepted by [`brute_longest_rainbow_path`].
pub const PATH_CAP: usize = 12;
/// Largest `n` accepted by [`brute_min_spanning_forest`].
pub const FOREST_CAP: usize = 9;

/// Optimum of a brute-force search together with one optimal witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum<W> {
    pub value: usize,
    pub witness: W,
}

/// Colors relabelled densely so they fit a `u128` mask; neighbor lists
/// ordered by color id.
struct Dense {
    n: usize,
    color: Vec<Option<u32>>,
    neighbors: Vec<Vec<(Vertex, u32)>>,
}

impl Dense {
    fn new(g: &ColoredGraph) -> Self {
        let n = g.n();
        let ids: Vec<_> = g.colors().collect();
        let dense = |c| ids.binary_search(&c).expect("color of an edge") as u32;
        let mut color = vec![None; n * n];
        let mut neighbors = vec![Vec::new(); n];
        for &(e, c) in g.edges() {
            let d = dense(c);
            color[e.u * n + e.v] = Some(d);
            color[e.v * n + e.u] = Some(d);
            neighbors[e.u].push((e.v, d));
            neighbors[e.v].push((e.u, d));
        }
        for list in &mut neighbors {
            list.sort_by_key(|&(v, d)| (d, v));
        }
        Self { n, color, neighbors }
    }

    fn color(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.color[u * self.n + v]
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        Err(OracleError::InstanceTooLarge { n, cap })
    } else {
        Ok(())
    }
}

struct CycleSearch<'a> {
    g: &'a Dense,
    start: Vertex,
    path: Vec<Vertex>,
    used: u128,
    best: Vec<Vertex>,
}

impl CycleSearch<'_> {
    fn run(&mut self, v: Vertex, visited: u32) {
        let len = self.path.len();
        if len >= 3 {
            if let Some(c) = self.g.color(v, self.start) {
                if self.used & (1 << c) == 0 && len > self.best.len() {
                    self.best = self.path.clone();
                }
            }
        }
        // Only vertices above the start may still join.
        let free = (self.start + 1..self.g.n).filter(|&w| visited & (1 << w) == 0).count();
        if len + free <= self.best.len() {
            return;
        }
        for &(w, c) in &self.g.neighbors[v] {
            if w <= self.start || visited & (1 << w) != 0 || self.used & (1 << c) != 0 {
                continue;
            }
            self.path.push(w);
            self.used |= 1 << c;
            self.run(w, visited | (1 << w));
            self.used &= !(1 << c);
            self.path.pop();
        }
    }
}

/// Longest cycle whose edges carry pairwise distinct colors. The witness
/// starts at its smallest vertex; `None` if no rainbow cycle exists.
pub fn brute_longest_rainbow_cycle(g: &ColoredGraph) -> Result<Optimum<Option<Vec<Vertex>>>, OracleError> {
    check_cap(g.n(), CYCLE_CAP)?;
    let dense = Dense::new(g);
    let per_start = par::map_range(0..g.n(), |s| {
        let mut search = CycleSearch { g: &dense, start: s, path: vec![s], used: 0, best: Vec::new() };
        search.run(s, 1 << s);
        search.best
    });
    let best = per_start.into_iter().fold(Vec::new(), |acc, c| if c.len() > acc.len() { c } else { acc });
    Ok(Optimum { value: best.len(), witness: (!best.is_empty()).then_some(best) })
}

struct PathSearch<'a> {
    g: &'a Dense,
    path: Vec<Vertex>,
    used: u128,
    best: Vec<Vertex>,
}

impl PathSearch<'_> {
    fn run(&mut self, v: Vertex, visited: u32) {
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.best.len() == self.g.n || self.g.n - visited.count_ones() as usize + self.path.len() <= self.best.len()
        {
            return;
        }
        for &(w, c) in &self.g.neighbors[v] {
            if visited & (1 << w) != 0 || self.used & (1 << c) != 0 {
                continue;
            }
            self.path.push(w);
            self.used |= 1 << c;
            self.run(w, visited | (1 << w));
            self.used &= !(1 << c);
            self.path.pop();
        }
    }
}

/// Most vertices on a rainbow path (a single vertex counts as a path).
pub fn brute_longest_rainbow_path(g: &ColoredGraph) -> Result<Optimum<Vec<Vertex>>, OracleError> {
    check_cap(g.n(), PATH_CAP)?;
    let dense = Dense::new(g);
    let per_start = par::map_range(0..g.n(), |s| {
        let mut search = PathSearch { g: &dense, path: vec![s], used: 0, best: Vec::new() };
        search.run(s, 1 << s);
        search.best
    });
    let best = per_start.into_iter().fold(Vec::new(), |acc, p| if p.len() > acc.len() { p } else { acc });
    Ok(Optimum { value: best.len(), witness: best })
}

struct ForestSearch<'a> {
    n: usize,
    edges: &'a [(Vertex, Vertex, u32)],
    degree: Vec<u8>,
    /// Other end of the path through each endpoint.
    other_end: Vec<Vertex>,
    used: u128,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl ForestSearch<'_> {
    fn run(&mut self, from: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let ceiling = (self.n - 1).min(self.chosen.len() + self.edges.len() - from);
        if ceiling <= self.best.len() {
            return;
        }
        for i in from..self.edges.len() {
            let (u, v, c) = self.edges[i];
            if self.degree[u] >= 2 || self.degree[v] >= 2 || self.used & (1 << c) != 0 || self.other_end[u] == v {
                continue;
            }
            let (eu, ev) = (self.other_end[u], self.other_end[v]);
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.other_end[eu] = ev;
            self.other_end[ev] = eu;
            self.used |= 1 << c;
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            self.used &= !(1 << c);
            self.other_end[ev] = v;
            self.other_end[eu] = u;
            self.degree[v] -= 1;
            self.degree[u] -= 1;
            if self.best.len() == self.n - 1 {
                return;
            }
        }
    }
}

/// Assembles the paths of a linear forest given by its edges, singletons
/// included, each oriented from its smaller end, sorted by first vertex.
fn paths_from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].len() == 2 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut prev = usize::MAX;
        let mut cur = s;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            path.push(next);
            seen[next] = true;
            prev = cur;
            cur = next;
        }
        if path[0] > path[path.len() - 1] {
            path.reverse();
        }
        paths.push(path);
    }
    paths.sort();
    paths
}

/// Fewest paths in a spanning rainbow path forest, which is `n` minus the
/// most edges in a rainbow linear forest.
pub fn brute_min_spanning_forest(g: &ColoredGraph) -> Result<Optimum<Vec<Vec<Vertex>>>, OracleError> {
    let n = g.n();
    check_cap(n, FOREST_CAP)?;
    if n == 0 {
        return Ok(Optimum { value: 0, witness: Vec::new() });
    }
    let dense = Dense::new(g);
    let edges: Vec<(Vertex, Vertex, u32)> =
        g.edges().iter().map(|&(e, _)| (e.u, e.v, dense.color(e.u, e.v).unwrap())).collect();
    let mut search = ForestSearch {
        n,
        edges: &edges,
        degree: vec![0; n],
        other_end: (0..n).collect(),
        used: 0,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    let chosen: Vec<(Vertex, Vertex)> = search.best.iter().map(|&i| (edges[i].0, edges[i].1)).collect();
    Ok(Optimum { value: n - chosen.len(), witness: paths_from_edges(n, &chosen) })
}
