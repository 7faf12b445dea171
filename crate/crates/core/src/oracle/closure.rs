//! Exhaustive swap closure over edge-set encoded forests.
//!
//! A forest is a vertex set plus a set of host edge indices. A swap joins
//! endpoints `x`, `y` of two different paths by the host edge `xy`; if the
//! forest already has an edge of that color it is dropped. This module
//! re-derives swaps from scratch and shares no code with the forest module.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::graph::{Color, ColoredGraph, Vertex};
use crate::par;

type Key = Box<[u64]>;

/// Summary of the set of forests reachable from a start forest by swaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapClosureStats {
    pub forests_visited: usize,
    pub start_p: usize,
    pub min_p: usize,
    /// Vertices that are a path endpoint in some reachable forest.
    pub endpoint_union: Vec<Vertex>,
    /// Colors of swaps between reachable forests.
    pub associated_colors: Vec<Color>,
    /// The visit cap was hit; the other fields are then partial.
    pub truncated: bool,
}

impl SwapClosureStats {
    /// No reachable forest has fewer paths than the start.
    pub fn swap_optimal(&self) -> bool {
        !self.truncated && self.min_p == self.start_p
    }
}

struct Host<'a> {
    g: &'a ColoredGraph,
    /// Edge index per ordered vertex pair.
    index: Vec<Option<usize>>,
}

impl<'a> Host<'a> {
    fn new(g: &'a ColoredGraph) -> Self {
        let n = g.n();
        let mut index = vec![None; n * n];
        for (i, &(e, _)) in g.edges().iter().enumerate() {
            index[e.u * n + e.v] = Some(i);
            index[e.v * n + e.u] = Some(i);
        }
        Self { g, index }
    }

    fn words(&self) -> usize {
        self.g.edge_count().div_ceil(64).max(1)
    }

    fn edge(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.index[u * self.g.n() + v]
    }
}

fn bits(key: &[u64]) -> impl Iterator<Item = usize> + '_ {
    key.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                w * 64 + b
            })
        })
    })
}

/// Everything about one forest needed to enumerate its swaps.
struct Shape {
    endpoints: Vec<Vertex>,
    /// Other end of the path through an endpoint.
    other_end: HashMap<Vertex, Vertex>,
    /// Edge index per color in use.
    by_color: HashMap<Color, usize>,
    edges: usize,
}

fn shape(host: &Host, vertices: &[Vertex], key: &[u64]) -> Shape {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    let mut by_color = HashMap::new();
    let mut edges = 0;
    for i in bits(key) {
        let (e, c) = host.g.edges()[i];
        adj.get_mut(&e.u).unwrap().push(e.v);
        adj.get_mut(&e.v).unwrap().push(e.u);
        by_color.insert(c, i);
        edges += 1;
    }
    let endpoints: Vec<Vertex> = vertices.iter().copied().filter(|v| adj[v].len() <= 1).collect();
    let mut other_end = HashMap::new();
    for &s in &endpoints {
        let (mut prev, mut cur) = (usize::MAX, s);
        while let Some(&next) = adj[&cur].iter().find(|&&w| w != prev) {
            prev = cur;
            cur = next;
        }
        other_end.insert(s, cur);
    }
    Shape { endpoints, other_end, by_color, edges }
}

/// Swaps out of one forest: `(child, associated color)`.
fn swaps(host: &Host, shape: &Shape, key: &[u64]) -> Vec<(Key, Color)> {
    let mut out = Vec::new();
    for (a, &x) in shape.endpoints.iter().enumerate() {
        for &y in &shape.endpoints[a + 1..] {
            if shape.other_end[&x] == y {
                continue;
            }
            let Some(i) = host.edge(x, y) else { continue };
            let color = host.g.edges()[i].1;
            let mut child: Key = key.into();
            child[i / 64] |= 1 << (i % 64);
            if let Some(&old) = shape.by_color.get(&color) {
                child[old / 64] &= !(1 << (old % 64));
            }
            out.push((child, color));
        }
    }
    out
}

/// The reachable set itself, in breadth-first order.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    pub stats: SwapClosureStats,
    vertices: Vec<Vertex>,
    keys: Vec<Key>,
    /// Endpoints of each visited forest.
    ends: Vec<Vec<Vertex>>,
    edge_list: Vec<(Vertex, Vertex)>,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Paths of the `i`-th visited forest, singletons included.
    pub fn paths(&self, i: usize) -> Vec<Vec<Vertex>> {
        let edges: Vec<(Vertex, Vertex)> = bits(&self.keys[i]).map(|b| self.edge_list[b]).collect();
        assemble(&self.vertices, &edges)
    }

    pub fn endpoints(&self, i: usize) -> &[Vertex] {
        &self.ends[i]
    }
}

/// Paths of the linear forest `edges` on `vertices`, each read from its
/// smaller end, sorted.
pub(crate) fn assemble(vertices: &[Vertex], edges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    let mut seen = HashSet::new();
    let mut paths = Vec::new();
    for &s in vertices {
        if seen.contains(&s) || adj[&s].len() == 2 {
            continue;
        }
        let mut path = vec![s];
        seen.insert(s);
        let (mut prev, mut cur) = (usize::MAX, s);
        while let Some(&next) = adj[&cur].iter().find(|&&w| w != prev) {
            path.push(next);
            seen.insert(next);
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

/// Breadth-first search over all forests reachable from `paths` by swaps,
/// stopping after `cap` distinct forests.
pub fn closure_set(paths: &[Vec<Vertex>], g: &ColoredGraph, cap: usize) -> ClosureSet {
    let host = Host::new(g);
    let mut vertices: Vec<Vertex> = paths.iter().flatten().copied().collect();
    vertices.sort_unstable();
    let mut start: Key = vec![0u64; host.words()].into();
    for p in paths {
        for w in p.windows(2) {
            let i = host.edge(w[0], w[1]).expect("start forest uses host edges");
            start[i / 64] |= 1 << (i % 64);
        }
    }
    let mut seen: HashSet<Key> = HashSet::from([start.clone()]);
    let mut keys = vec![start];
    let mut ends = Vec::new();
    let mut colors = std::collections::BTreeSet::new();
    let mut p_values = Vec::new();
    let mut truncated = false;
    let mut frontier: VecDeque<usize> = VecDeque::from([0]);
    while !frontier.is_empty() {
        let level: Vec<usize> = frontier.drain(..).collect();
        let expanded = par::map(&level, |&i| {
            let s = shape(&host, &vertices, &keys[i]);
            let children = swaps(&host, &s, &keys[i]);
            (vertices.len() - s.edges, s.endpoints, children)
        });
        for (p, endpoints, children) in expanded {
            p_values.push(p);
            ends.push(endpoints);
            for (child, color) in children {
                colors.insert(color);
                if seen.contains(&child) {
                    continue;
                }
                if keys.len() >= cap {
                    truncated = true;
                    continue;
                }
                seen.insert(child.clone());
                frontier.push_back(keys.len());
                keys.push(child);
            }
        }
    }
    let mut endpoint_union: Vec<Vertex> = ends.iter().flatten().copied().collect();
    endpoint_union.sort_unstable();
    endpoint_union.dedup();
    let stats = SwapClosureStats {
        forests_visited: keys.len(),
        start_p: p_values[0],
        min_p: p_values.iter().copied().min().unwrap(),
        endpoint_union,
        associated_colors: colors.into_iter().collect(),
        truncated,
    };
    let edge_list = g.edges().iter().map(|&(e, _)| (e.u, e.v)).collect();
    ClosureSet { stats, vertices, keys, ends, edge_list }
}

/// Statistics of the swap closure of `paths` in `g`, visiting at most `cap`
/// forests.
pub fn swap_closure(paths: &[Vec<Vertex>], g: &ColoredGraph, cap: usize) -> SwapClosureStats {
    closure_set(paths, g, cap).stats
}
