//! One path-extension step and the loop around it.
//!
//! The search looks for a path `P` on the vertices of the first path `P1`
//! (plus uncovered vertices) whose endpoint has a helper-graph edge into
//! another path `P_i`. `P` is found in up to three levels:
//!
//! * level 0: `P = P1`;
//! * level 1: one edge of the first helper graph at the moving end either
//!   prepends an uncovered vertex or rotates the path, exposing a new end;
//! * level 2: one more rotation or extension with an edge of the second
//!   helper graph.
//!
//! The hit edge comes from the third helper graph, so the (up to) three added
//! edges have colors from three disjoint palettes. Every order of the helper
//! graphs is tried, lexicographically, and both ends of `P1`. On a hit at `x`,
//! `P1'` is `P` followed by the longer of the two subpaths of `P_i` ending at
//! `x`; the rest of `P_i` stays in the forest (or vanishes if empty).

use std::collections::HashSet;

use crate::expander::{quick_refute, Verdict};
use crate::forest::PathForest;
use crate::graph::{Color, ColoredGraph, Edge, Vertex};

use super::split::SplitBundle;
use super::CycleError;

/// Orders of the three helper graphs, lexicographic.
pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HelperEdge {
    /// Helper graph index (0, 1 or 2).
    pub graph: usize,
    pub edge: Edge,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStepResult {
    pub new_forest: PathForest,
    pub helper_edges: Vec<HelperEdge>,
    /// Index of the donor path in the input forest.
    pub donor_path_index: usize,
    /// `(graph, color)` of every helper edge; these classes must be removed.
    pub removed_colors: Vec<(usize, Color)>,
    pub level: usize,
    pub sigma: [usize; 3],
    pub p1_before: usize,
    pub p1_after: usize,
    pub donor_before: usize,
    pub donor_after: usize,
}

/// State of a failed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDiagnostics {
    pub p1_len: usize,
    pub other_vertices: usize,
    pub uncovered: usize,
    /// Helper-graph degrees of the first and last vertex of `P1`.
    pub end_degrees: [[usize; 3]; 2],
    /// Distinct endpoints reached at levels 1 and 2, summed over orders and ends.
    pub level1_ends: usize,
    pub level2_ends: usize,
}

impl std::fmt::Display for ExtensionDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "|P1| = {}, {} vertices on other paths, {} uncovered, end degrees {:?}, {} level-1 and {} level-2 ends",
            self.p1_len, self.other_vertices, self.uncovered, self.end_degrees, self.level1_ends, self.level2_ends
        )
    }
}

/// How a candidate path was derived from `P1` (moving end first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    /// Prepend an uncovered vertex.
    Prepend(Vertex),
    /// Edge from the current end to the vertex at this index (>= 2): reverse
    /// the prefix before it.
    Rotate(usize),
}

fn apply_move(path: &[Vertex], mv: Move) -> Vec<Vertex> {
    match mv {
        Move::Prepend(w) => {
            let mut out = Vec::with_capacity(path.len() + 1);
            out.push(w);
            out.extend_from_slice(path);
            out
        }
        Move::Rotate(k) => {
            let mut out: Vec<Vertex> = path[..k].iter().rev().copied().collect();
            out.extend_from_slice(&path[k..]);
            out
        }
    }
}

/// Where the move lands: the new moving end and the path length.
fn move_for(
    path_len: usize,
    pos: &dyn Fn(Vertex) -> Option<usize>,
    uncovered: &dyn Fn(Vertex) -> bool,
    w: Vertex,
    path: &[Vertex],
) -> Option<(Move, Vertex, usize)> {
    match pos(w) {
        Some(k) if k >= 2 => Some((Move::Rotate(k), path[k - 1], path_len)),
        Some(_) => None,
        None if uncovered(w) => Some((Move::Prepend(w), w, path_len + 1)),
        None => None,
    }
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    level: usize,
    sigma: [usize; 3],
    /// 0: moving end is the first vertex of `P1`; 1: the last.
    end: usize,
    moves: [Option<Move>; 2],
    endpoint: Vertex,
    x: Vertex,
    score: usize,
    donor: usize,
}

struct Layout<'a> {
    paths: &'a [Vec<Vertex>],
    place: Vec<Option<(usize, usize)>>,
}

impl Layout<'_> {
    fn in_other(&self, v: Vertex) -> bool {
        matches!(self.place[v], Some((i, _)) if i > 0)
    }

    fn uncovered(&self, v: Vertex) -> bool {
        self.place[v].is_none()
    }

    /// Vertices kept from the donor when hit at `x`.
    fn gain(&self, x: Vertex) -> (usize, usize) {
        let (i, t) = self.place[x].unwrap();
        let len = self.paths[i].len();
        (i, (t + 1).max(len - t))
    }
}

/// Best hit from `endpoint` (with the candidate path of length `len`) via
/// helper graph `h`: most vertices gained, then lowest donor index.
fn best_hit(h: &ColoredGraph, layout: &Layout, endpoint: Vertex, len: usize) -> Option<(Vertex, usize, usize)> {
    let mut best: Option<(Vertex, usize, usize)> = None;
    for &(x, _) in h.neighbors(endpoint) {
        if !layout.in_other(x) {
            continue;
        }
        let (donor, gain) = layout.gain(x);
        let score = len + gain;
        if best.is_none_or(|(_, s, d)| score > s || (score == s && donor < d)) {
            best = Some((x, score, donor));
        }
    }
    best
}

fn better(a: &Hit, b: &Option<Hit>) -> bool {
    match b {
        None => true,
        Some(b) => a.score > b.score || (a.score == b.score && a.donor < b.donor),
    }
}

/// One application of the path-builder search to `forest`, whose first
/// path is the one being extended.
pub fn path_builder_step(bundle: &SplitBundle, forest: &PathForest) -> Result<ExtensionStepResult, CycleError> {
    let n = bundle.host.n();
    let paths = forest.paths();
    if paths.len() < 2 {
        return Err(CycleError::Precondition("forest has no path to absorb".into()));
    }
    let mut place = vec![None; n];
    for (i, p) in paths.iter().enumerate() {
        for (t, &v) in p.iter().enumerate() {
            place[v] = Some((i, t));
        }
    }
    let layout = Layout { paths, place };
    let p1 = &paths[0];
    let m = p1.len();
    let uncovered = n - forest.vertex_count();
    if m + bundle.params.a + uncovered > n {
        return Err(CycleError::Precondition(format!(
            "|P1| = {m} exceeds n - a - |U| = {}",
            n as isize - bundle.params.a as isize - uncovered as isize
        )));
    }
    let h = &bundle.h;
    let oriented = [p1.to_vec(), p1.iter().rev().copied().collect()];

    // Level 0.
    let mut best: Option<Hit> = None;
    for sigma in PERMUTATIONS {
        for (end, q) in oriented.iter().enumerate() {
            if let Some((x, score, donor)) = best_hit(&h[sigma[2]], &layout, q[0], m) {
                let hit = Hit { level: 0, sigma, end, moves: [None, None], endpoint: q[0], x, score, donor };
                if better(&hit, &best) {
                    best = Some(hit);
                }
            }
        }
    }

    let mut level_ends = [0usize; 2];
    for level in 1..=2 {
        if best.is_some() {
            break;
        }
        for sigma in PERMUTATIONS {
            for (end, q) in oriented.iter().enumerate() {
                let pos_q = |v: Vertex| match layout.place[v] {
                    Some((0, t)) => Some(if end == 0 { t } else { m - 1 - t }),
                    _ => None,
                };
                let unc = |v: Vertex| layout.uncovered(v);
                let mut seen: HashSet<Vertex> = HashSet::new();
                let mut firsts: Vec<(Move, Vertex, usize)> = Vec::new();
                for &(w, _) in h[sigma[0]].neighbors(q[0]) {
                    if let Some(mv) = move_for(m, &pos_q, &unc, w, q) {
                        firsts.push(mv);
                    }
                }
                let mut consider = |moves: [Option<Move>; 2], endpoint: Vertex, len: usize, best: &mut Option<Hit>| {
                    if !seen.insert(endpoint) {
                        return;
                    }
                    if let Some((x, score, donor)) = best_hit(&h[sigma[2]], &layout, endpoint, len) {
                        let hit = Hit { level, sigma, end, moves, endpoint, x, score, donor };
                        if better(&hit, best) {
                            *best = Some(hit);
                        }
                    }
                };
                if level == 1 {
                    for &(mv, endpoint, len) in &firsts {
                        consider([Some(mv), None], endpoint, len, &mut best);
                    }
                } else {
                    for &(mv, _, len) in &firsts {
                        let path = apply_move(q, mv);
                        let mut index = vec![usize::MAX; n];
                        for (k, &v) in path.iter().enumerate() {
                            index[v] = k;
                        }
                        let pos = |v: Vertex| (index[v] != usize::MAX).then_some(index[v]);
                        for &(z, _) in h[sigma[1]].neighbors(path[0]) {
                            if let Some((mv2, endpoint, len2)) = move_for(len, &pos, &unc, z, &path) {
                                consider([Some(mv), Some(mv2)], endpoint, len2, &mut best);
                            }
                        }
                    }
                }
                level_ends[level - 1] += seen.len();
            }
        }
    }

    let Some(hit) = best else {
        let degrees = |v: Vertex| [h[0].degree(v), h[1].degree(v), h[2].degree(v)];
        return Err(CycleError::NoExtensionFound(Box::new(ExtensionDiagnostics {
            p1_len: m,
            other_vertices: forest.vertex_count() - m,
            uncovered,
            end_degrees: [degrees(p1[0]), degrees(p1[m - 1])],
            level1_ends: level_ends[0],
            level2_ends: level_ends[1],
        })));
    };
    Ok(materialize(bundle, forest, &layout, &oriented[hit.end], &hit))
}

fn materialize(
    bundle: &SplitBundle,
    forest: &PathForest,
    layout: &Layout,
    q: &[Vertex],
    hit: &Hit,
) -> ExtensionStepResult {
    let h = &bundle.h;
    let mut helper_edges = Vec::new();
    let mut path = q.to_vec();
    for (slot, mv) in hit.moves.iter().enumerate() {
        let Some(mv) = *mv else { continue };
        let from = path[0];
        let to = match mv {
            Move::Prepend(w) => w,
            Move::Rotate(k) => path[k],
        };
        let graph = hit.sigma[slot];
        let color = h[graph].color_of(from, to).expect("move follows a helper edge");
        helper_edges.push(HelperEdge { graph, edge: Edge::new(from, to), color });
        path = apply_move(&path, mv);
    }
    debug_assert_eq!(path[0], hit.endpoint);
    let graph = hit.sigma[2];
    let color = h[graph].color_of(hit.endpoint, hit.x).expect("hit follows a helper edge");
    helper_edges.push(HelperEdge { graph, edge: Edge::new(hit.endpoint, hit.x), color });

    let (donor, t) = layout.place[hit.x].unwrap();
    let d = &layout.paths[donor];
    let (taken, rest): (Vec<Vertex>, Vec<Vertex>) = if t + 1 >= d.len() - t {
        (d[..=t].iter().rev().copied().collect(), d[t + 1..].to_vec())
    } else {
        (d[t..].to_vec(), d[..t].to_vec())
    };
    path.reverse();
    let p1_before = q.len();
    path.extend(taken);

    let mut paths: Vec<Vec<Vertex>> = forest.paths().to_vec();
    let p1_after = path.len();
    paths[0] = path;
    let donor_after = rest.len();
    if rest.is_empty() {
        paths.remove(donor);
    } else {
        paths[donor] = rest;
    }
    ExtensionStepResult {
        new_forest: PathForest::new(forest.host(), paths),
        removed_colors: helper_edges.iter().map(|e| (e.graph, e.color)).collect(),
        helper_edges,
        donor_path_index: donor,
        level: hit.level,
        sigma: hit.sigma,
        p1_before,
        p1_after,
        donor_before: d.len(),
        donor_after,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopReason {
    TargetReached,
    NoExtensionFound {
        round: usize,
        diagnostics: Box<ExtensionDiagnostics>,
    },
    IterationCap,
    /// Every other path has been absorbed.
    ForestExhausted,
    PreconditionFailed(String),
}

impl StopReason {
    pub fn label(&self) -> &'static str {
        match self {
            StopReason::TargetReached => "target",
            StopReason::NoExtensionFound { .. } => "no_extension",
            StopReason::IterationCap => "cap",
            StopReason::ForestExhausted => "exhausted",
            StopReason::PreconditionFailed(_) => "precondition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLog {
    pub round: usize,
    pub level: usize,
    pub sigma: [usize; 3],
    pub donor: usize,
    pub p1_len: usize,
    pub helper_edges: Vec<HelperEdge>,
    /// Quick sampled expander verdict per helper graph before the round.
    pub expander: [&'static str; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionOutcome {
    pub forest: PathForest,
    pub log: Vec<RoundLog>,
    pub stop: StopReason,
    /// Times each original path was used as a donor, indexed by its
    /// position in the input forest.
    pub donor_uses: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendConfig {
    /// Maximum number of rounds.
    pub cap: usize,
    /// Random sets per helper graph in the per-round expander probe.
    pub expander_samples: usize,
    pub seed: u64,
}

impl ExtendConfig {
    /// Cap `ceil(sqrt n)`.
    pub fn for_n(n: usize, seed: u64) -> Self {
        Self { cap: (n as f64).sqrt().ceil() as usize, expander_samples: 16, seed }
    }
}

/// Repeats [`path_builder_step`] until `P1` reaches the target length, no
/// extension exists, the round cap is hit, or no other path remains. After
/// each round the color classes of the helper edges are removed from their
/// helper graphs.
pub fn extend_to_long_path(bundle: &mut SplitBundle, forest: PathForest, config: &ExtendConfig) -> ExtensionOutcome {
    let target = bundle.params.target_len();
    let mut ids: Vec<usize> = (0..forest.path_count()).collect();
    let mut donor_uses = vec![0; forest.path_count()];
    let mut forest = forest;
    let mut log = Vec::new();
    let (a, b) = (bundle.params.a, bundle.params.b);
    let stop = loop {
        if forest.paths()[0].len() as f64 >= target {
            break StopReason::TargetReached;
        }
        if forest.path_count() < 2 {
            break StopReason::ForestExhausted;
        }
        if log.len() >= config.cap {
            break StopReason::IterationCap;
        }
        let round = log.len() + 1;
        let expander = [0, 1, 2].map(|j| {
            let seed = config.seed ^ ((round as u64) << 8 | j as u64);
            match quick_refute(&bundle.h[j], a, b, config.expander_samples, seed) {
                Verdict::Refuted(_) => "refuted",
                _ => "undetermined",
            }
        });
        let step = match path_builder_step(bundle, &forest) {
            Ok(step) => step,
            Err(CycleError::NoExtensionFound(diagnostics)) => {
                break StopReason::NoExtensionFound { round, diagnostics };
            }
            Err(e) => break StopReason::PreconditionFailed(e.to_string()),
        };
        donor_uses[ids[step.donor_path_index]] += 1;
        if step.donor_after == 0 {
            ids.remove(step.donor_path_index);
        }
        for &(graph, color) in &step.removed_colors {
            bundle.remove_class(round, graph, color);
        }
        log.push(RoundLog {
            round,
            level: step.level,
            sigma: step.sigma,
            donor: step.donor_path_index,
            p1_len: step.p1_after,
            helper_edges: step.helper_edges,
            expander,
        });
        forest = step.new_forest;
    };
    ExtensionOutcome { forest, log, stop, donor_uses }
}
