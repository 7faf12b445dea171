//! `(a, b)`-expander checks.
//!
//! A graph is an `(a, b)`-expander when its minimum degree is at least `a`
//! and every pair of disjoint sets of sizes `a` and `b` spans an edge. The
//! second condition fails exactly when some `a`-set `A` has at least `b`
//! vertices outside `A ∪ N(A)`, so only `A` is ever enumerated.

use fixedbitset::FixedBitSet;

use crate::graph::{count_edges_between, Color, ColoredGraph, Vertex, VertexSet};
use crate::par;
use crate::rng::SplitMix64;

/// Largest number of `a`-subsets the exhaustive mode will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpanderMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpanderParams {
    pub a: usize,
    pub b: usize,
    pub mode: ExpanderMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A vertex of degree below `a`.
    LowDegree { vertex: Vertex, degree: usize },
    /// Disjoint sets of sizes `a` and `b` with no edge between them.
    EmptyPair { a: VertexSet, b: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Refuted(Witness),
    Undetermined(String),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Refuted(_) => "refuted",
            Verdict::Undetermined(_) => "undetermined",
        }
    }
}

/// Checks a witness directly against `h`, without the bitset machinery used
/// to find it.
pub fn witness_is_valid(h: &ColoredGraph, a: usize, b: usize, w: &Witness) -> bool {
    match w {
        Witness::LowDegree { vertex, degree } => *vertex < h.n() && h.degree(*vertex) == *degree && *degree < a,
        Witness::EmptyPair { a: sa, b: sb } => {
            sa.len() == a
                && sb.len() == b
                && sa.max().is_some_and(|v| v < h.n())
                && sb.max().is_some_and(|v| v < h.n())
                && count_edges_between(h, sa, sb) == Ok(0)
        }
    }
}

fn checked(h: &ColoredGraph, params: &ExpanderParams, w: Witness) -> Verdict {
    assert!(witness_is_valid(h, params.a, params.b, &w), "expander search produced an invalid witness: {w:?}");
    Verdict::Refuted(w)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if r > EXHAUSTIVE_LIMIT * 1000 {
            return u128::MAX;
        }
    }
    r
}

fn closed_neighborhoods(h: &ColoredGraph) -> Vec<FixedBitSet> {
    let mut bits = h.adjacency_bits();
    for (v, b) in bits.iter_mut().enumerate() {
        b.insert(v);
    }
    bits
}

/// Vertices outside `A ∪ N(A)` given `cover = A ∪ N(A)`: the first `b` of
/// them as a witness.
fn empty_pair(n: usize, set: &[Vertex], cover: &FixedBitSet, b: usize) -> Witness {
    let outside: Vec<Vertex> = (0..n).filter(|v| !cover.contains(*v)).take(b).collect();
    Witness::EmptyPair { a: VertexSet::new(set.iter().copied()), b: VertexSet::new(outside) }
}

fn low_degree(h: &ColoredGraph, a: usize) -> Option<Witness> {
    (0..h.n()).find(|&v| h.degree(v) < a).map(|vertex| Witness::LowDegree { vertex, degree: h.degree(vertex) })
}

/// First `a`-set in lexicographic order whose closed neighborhood leaves at
/// least `b` vertices uncovered, searching subsets that start with `first`.
fn search_prefix(closed: &[FixedBitSet], n: usize, a: usize, b: usize, first: Vertex) -> Option<Witness> {
    let mut stack: Vec<FixedBitSet> = Vec::with_capacity(a);
    let mut chosen = vec![first];
    stack.push(closed[first].clone());
    let covered_limit = n - b;
    if a == 1 {
        return (stack[0].count_ones(..) <= covered_limit).then(|| empty_pair(n, &chosen, &stack[0], b));
    }
    // Iterative enumeration of the remaining a-1 members above `first`.
    let mut next = first + 1;
    loop {
        if chosen.len() == a {
            let cover = stack.last().unwrap();
            if cover.count_ones(..) <= covered_limit {
                return Some(empty_pair(n, &chosen, cover, b));
            }
            let last = chosen.pop().unwrap();
            stack.pop();
            next = last + 1;
            continue;
        }
        let need = a - chosen.len();
        if next + need > n {
            if chosen.len() == 1 {
                return None;
            }
            let last = chosen.pop().unwrap();
            stack.pop();
            next = last + 1;
            continue;
        }
        let mut cover = stack.last().unwrap().clone();
        cover.union_with(&closed[next]);
        chosen.push(next);
        stack.push(cover);
        next += 1;
    }
}

fn exhaustive_e3(h: &ColoredGraph, params: &ExpanderParams) -> Verdict {
    let (n, a, b) = (h.n(), params.a, params.b);
    let count = binomial(n, a);
    if count > EXHAUSTIVE_LIMIT {
        return Verdict::Undetermined(format!("C({n}, {a}) exceeds the exhaustive limit"));
    }
    let closed = closed_neighborhoods(h);
    let found = par::map_range(0..n + 1 - a, |first| search_prefix(&closed, n, a, b, first));
    match found.into_iter().flatten().next() {
        Some(w) => checked(h, params, w),
        None => Verdict::Holds,
    }
}

/// Greedy adversarial `a`-set grown from `start`: repeatedly add the vertex
/// that enlarges the closed neighborhood least (ties by smaller id).
fn greedy_set(closed: &[FixedBitSet], n: usize, a: usize, start: Vertex) -> (Vec<Vertex>, FixedBitSet) {
    let mut set = vec![start];
    let mut cover = closed[start].clone();
    while set.len() < a {
        let best =
            (0..n).filter(|v| !set.contains(v)).min_by_key(|&v| (closed[v].difference(&cover).count(), v)).unwrap();
        cover.union_with(&closed[best]);
        set.push(best);
    }
    (set, cover)
}

fn sampled_e3(h: &ColoredGraph, params: &ExpanderParams, samples: usize, seed: u64) -> Verdict {
    let (n, a, b) = (h.n(), params.a, params.b);
    let closed = closed_neighborhoods(h);
    let covered_limit = n - b;

    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (h.degree(v), v));
    let mut structured = vec![by_degree[..a].to_vec()];
    let starts: Vec<Vertex> = by_degree.iter().copied().take(a.min(32)).collect();
    let greedy = par::map(&starts, |&s| greedy_set(&closed, n, a, s).0);
    structured.extend(greedy);
    for set in &structured {
        let mut cover = FixedBitSet::with_capacity(n);
        set.iter().for_each(|&v| cover.union_with(&closed[v]));
        if cover.count_ones(..) <= covered_limit {
            return checked(h, params, empty_pair(n, set, &cover, b));
        }
    }

    let all: Vec<Vertex> = (0..n).collect();
    let hits = par::map_range(0..samples, |i| {
        let set = SplitMix64::derive(seed, i as u64).sample(&all, a);
        let mut cover = FixedBitSet::with_capacity(n);
        set.iter().for_each(|&v| cover.union_with(&closed[v]));
        (cover.count_ones(..) <= covered_limit).then(|| empty_pair(n, &set, &cover, b))
    });
    match hits.into_iter().flatten().next() {
        Some(w) => checked(h, params, w),
        None => Verdict::Undetermined(format!(
            "no violation among {} structured and {samples} random sets",
            structured.len()
        )),
    }
}

/// Verdict on whether `h` is an `(a, b)`-expander.
///
/// The degree condition is always checked exactly. The pair condition is
/// either enumerated (exhaustive mode) or searched with random and greedy
/// candidate sets (sampled mode, which can refute but never certify).
pub fn check_expander(h: &ColoredGraph, params: &ExpanderParams) -> Verdict {
    let (n, a, b) = (h.n(), params.a, params.b);
    assert!(a > 0 && a <= b, "expander parameters need 0 < a <= b");
    if let Some(w) = low_degree(h, a) {
        return checked(h, params, w);
    }
    if a + b > n {
        // No disjoint pair of the required sizes exists.
        return match params.mode {
            ExpanderMode::Exhaustive => Verdict::Holds,
            ExpanderMode::Sampled { .. } => Verdict::Undetermined("pair condition is vacuous".into()),
        };
    }
    match params.mode {
        ExpanderMode::Exhaustive => exhaustive_e3(h, params),
        ExpanderMode::Sampled { samples, seed } => sampled_e3(h, params, samples, seed),
    }
}

/// Cheap refutation attempt: the exact degree condition plus `samples`
/// random `a`-sets, without the greedy candidates of the sampled mode. Never
/// returns `Holds`.
pub fn quick_refute(h: &ColoredGraph, a: usize, b: usize, samples: usize, seed: u64) -> Verdict {
    let params = ExpanderParams { a, b, mode: ExpanderMode::Sampled { samples, seed } };
    if let Some(w) = low_degree(h, a) {
        return checked(h, &params, w);
    }
    let n = h.n();
    if a + b > n {
        return Verdict::Undetermined("pair condition is vacuous".into());
    }
    let closed = closed_neighborhoods(h);
    let all: Vec<Vertex> = (0..n).collect();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let set = rng.sample(&all, a);
        let mut cover = FixedBitSet::with_capacity(n);
        set.iter().for_each(|&v| cover.union_with(&closed[v]));
        if cover.count_ones(..) <= n - b {
            return checked(h, &params, empty_pair(n, &set, &cover, b));
        }
    }
    Verdict::Undetermined(format!("no violation among {samples} random sets"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustOutcome {
    pub verdict: Verdict,
    /// The removal set behind a refutation, or the last set tried.
    pub removed: Vec<Color>,
    /// Removal sets examined.
    pub tried: usize,
}

fn removal_sets(h: &ColoredGraph, a: usize, m: usize, extra: usize, seed: u64) -> Vec<Vec<Color>> {
    let colors: Vec<Color> = h.colors().collect();
    let m = m.min(colors.len());
    let low: Vec<bool> = (0..h.n()).map(|v| h.degree(v) < a + m).collect();
    let mut scored: Vec<(usize, Color)> = colors
        .iter()
        .map(|&c| {
            let hits = h.class(c).iter().map(|e| low[e.u] as usize + low[e.v] as usize).sum();
            (hits, c)
        })
        .collect();
    scored.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut sets = vec![scored.iter().take(m).map(|&(_, c)| c).collect::<Vec<_>>()];
    for i in 0..extra {
        let mut s = SplitMix64::derive(seed, i as u64).sample(&colors, m);
        s.sort_unstable();
        sets.push(s);
    }
    sets
}

/// All `m`-subsets of `colors`, lexicographically.
fn all_removals(colors: &[Color], m: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    let k = colors.len();
    loop {
        out.push(idx.iter().map(|&i| colors[i]).collect());
        let Some(pos) = (0..m).rev().find(|&i| idx[i] != i + k - m) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether `h` stays an `(a, b)`-expander after removing any `m` color classes.
///
/// When every removal set and every `a`-set can be enumerated within the
/// exhaustive limit, that is done and the answer is exact. Otherwise the
/// `m` classes touching the most vertices of degree below `a + m` are
/// removed, followed by a few random removal sets; a surviving graph then
/// yields `Undetermined`.
pub fn robust_margin(h: &ColoredGraph, params: &ExpanderParams, m: usize) -> RobustOutcome {
    if m == 0 {
        return RobustOutcome { verdict: check_expander(h, params), removed: Vec::new(), tried: 1 };
    }
    let colors: Vec<Color> = h.colors().collect();
    let (seed, extra) = match params.mode {
        ExpanderMode::Sampled { seed, samples } => (seed, samples.clamp(1, 8)),
        ExpanderMode::Exhaustive => (0, 4),
    };
    let total = binomial(colors.len(), m.min(colors.len())).saturating_mul(binomial(h.n(), params.a).max(1));
    let exact = params.mode == ExpanderMode::Exhaustive && total <= EXHAUSTIVE_LIMIT;
    let sets =
        if exact { all_removals(&colors, m.min(colors.len())) } else { removal_sets(h, params.a, m, extra, seed) };
    let verdicts = par::map(&sets, |s| check_expander(&crate::graph::remove_color_classes(h, s), params));
    let tried = sets.len();
    for (s, v) in sets.iter().zip(&verdicts) {
        if v.is_refuted() {
            return RobustOutcome { verdict: v.clone(), removed: s.clone(), tried };
        }
    }
    let all_hold = verdicts.iter().all(|v| *v == Verdict::Holds);
    let verdict = if exact && all_hold {
        Verdict::Holds
    } else {
        Verdict::Undetermined(format!("no refutation among {tried} removal sets"))
    };
    RobustOutcome { verdict, removed: sets.last().cloned().unwrap_or_default(), tried }
}
