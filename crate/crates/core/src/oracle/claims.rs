//! Structural inequalities of swap-optimal forests, checked exhaustively.
//!
//! For a swap-optimal forest `F` with `j` paths let `A` be the endpoint union
//! of its swap closure (`n_j = |A|`) and `C` the colors of swaps inside the
//! closure. Then `n_j / 2 - j <= |C| <= n_j - j`, and every vertex of `A` has
//! at most `|C|` incident edges colored from `C`.
//!
//! [`claim_chain`] additionally builds the descending chain
//! `F_k ⊇ F_{k-1} ⊇ .. ⊇ F_1` from a minimum spanning rainbow path forest by
//! repeatedly dropping a shortest path at a well-chosen endpoint, and checks
//! the degree and edge-count inequalities relating consecutive levels.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::graph::{Color, ColoredGraph, Vertex};

use super::closure::{closure_set, SwapClosureStats};
use super::sequence::{verify_sequence_condition, SequenceCheckInput};
use super::{brute_min_spanning_forest, OracleError};

/// Largest host accepted by [`claim_chain`].
pub const CHAIN_CAP: usize = 7;

/// Visit cap for every closure computed by the chain.
const CLOSURE_CAP: usize = 2_000_000;

/// The two counting inequalities on one swap-optimal forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestClaims {
    pub j: usize,
    pub n_j: usize,
    pub colors: usize,
    /// `n_j / 2 - j <= |C|`.
    pub lower_ok: bool,
    /// `|C| <= n_j - j`.
    pub upper_ok: bool,
    /// The lower bound is `<= 0`, so it holds trivially.
    pub lower_vacuous: bool,
    /// Every `x` in `A` has at most `|C|` edges colored from `C`.
    pub degree_ok: bool,
    /// `C` is empty, so the degree inequality reads `0 <= 0`.
    pub degree_vacuous: bool,
    pub max_degree: usize,
}

impl ForestClaims {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok && self.degree_ok
    }
}

/// Number of edges at each vertex whose color lies in `colors`.
fn class_degrees(g: &ColoredGraph, colors: &BTreeSet<Color>) -> Vec<usize> {
    (0..g.n()).map(|v| g.neighbors(v).iter().filter(|(_, c)| colors.contains(c)).count()).collect()
}

/// Checks both inequalities for a forest whose closure has been computed.
/// Returns `None` unless the closure is complete and shows `F` swap-optimal.
pub fn forest_claims(g: &ColoredGraph, stats: &SwapClosureStats) -> Option<ForestClaims> {
    if !stats.swap_optimal() {
        return None;
    }
    let (j, n_j) = (stats.start_p, stats.endpoint_union.len());
    let colors: BTreeSet<Color> = stats.associated_colors.iter().copied().collect();
    let c = colors.len();
    let degrees = class_degrees(g, &colors);
    let max_degree = stats.endpoint_union.iter().map(|&x| degrees[x]).max().unwrap_or(0);
    Some(ForestClaims {
        j,
        n_j,
        colors: c,
        lower_ok: n_j <= 2 * (c + j),
        upper_ok: c + j <= n_j,
        lower_vacuous: n_j <= 2 * j,
        degree_ok: max_degree <= c,
        degree_vacuous: c == 0,
        max_degree,
    })
}

/// One level of the descending chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLevel {
    pub j: usize,
    pub forest: Vec<Vec<Vertex>>,
    pub endpoints: Vec<Vertex>,
    pub colors: Vec<Color>,
    pub swap_optimal: bool,
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub j: usize,
    /// Second level index for the edge-count inequalities, or the vertex for
    /// the per-vertex degree inequality.
    pub other: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub k: usize,
    /// `delta n` with `delta = 1 - min_degree / n`.
    pub delta_n: f64,
    /// Levels `1..=k`, index 0 is level 1.
    pub levels: Vec<ChainLevel>,
    pub checks: Vec<ClaimCheck>,
    /// Inequality families with no admissible index, by name.
    pub vacuous: Vec<String>,
    /// `n_1, .., n_k`.
    pub sizes: Vec<usize>,
    /// The sizes strictly increase and satisfy the sequence hypothesis with
    /// `c = 1/6` and `m = max(ceil(3 delta n), 1)`; `None` if not increasing.
    pub sequence_condition: Option<bool>,
}

impl ChainReport {
    pub fn violations(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn remove_path(forest: &[Vec<Vertex>], path: &[Vertex]) -> Vec<Vec<Vertex>> {
    forest.iter().filter(|p| p.as_slice() != path).cloned().collect()
}

/// Builds the chain on a host with at most [`CHAIN_CAP`] vertices and checks
/// every inequality along it.
///
/// Ties are broken deterministically: the first forest in breadth-first
/// order among those with a shortest path at `x`, and the smallest `x` among
/// those minimizing the next endpoint union.
pub fn claim_chain(g: &ColoredGraph) -> Result<ChainReport, OracleError> {
    let n = g.n();
    if n > CHAIN_CAP {
        return Err(OracleError::InstanceTooLarge { n, cap: CHAIN_CAP });
    }
    let delta_n = (n - g.min_degree()) as f64;
    let start = brute_min_spanning_forest(g)?;
    let k = start.value;
    let mut levels_rev = Vec::new();
    let mut checks = Vec::new();
    let mut forest = start.witness;
    for j in (1..=k).rev() {
        let closure = closure_set(&forest, g, CLOSURE_CAP);
        let stats = closure.stats.clone();
        let level = ChainLevel {
            j,
            forest: forest.clone(),
            endpoints: stats.endpoint_union.clone(),
            colors: stats.associated_colors.clone(),
            swap_optimal: stats.swap_optimal() && stats.start_p == j,
        };
        checks.push(ClaimCheck {
            claim: "swap_optimal",
            j,
            other: 0,
            lhs: stats.min_p as f64,
            rhs: j as f64,
            holds: level.swap_optimal,
        });
        levels_rev.push(level);
        if j == 1 {
            break;
        }
        let mut best: Option<(usize, Vertex, Vec<Vec<Vertex>>)> = None;
        let mut unions = Vec::new();
        for &x in &stats.endpoint_union {
            let mut pick: Option<(usize, Vec<Vec<Vertex>>, Vec<Vertex>)> = None;
            for i in 0..closure.len() {
                if !closure.endpoints(i).contains(&x) {
                    continue;
                }
                let paths = closure.paths(i);
                let p = paths.iter().find(|p| p[0] == x || p[p.len() - 1] == x).unwrap().clone();
                if pick.as_ref().is_none_or(|(len, _, _)| p.len() < *len) {
                    pick = Some((p.len(), paths, p));
                }
            }
            let (_, paths, p) = pick.expect("x is an endpoint somewhere in the closure");
            let rest = remove_path(&paths, &p);
            let union = closure_set(&rest, g, CLOSURE_CAP).stats.endpoint_union;
            if best.as_ref().is_none_or(|(size, _, _)| union.len() < *size) {
                best = Some((union.len(), x, rest));
            }
            unions.push((x, union));
        }
        let (_, _, next) = best.unwrap();
        let a_j: BTreeSet<Vertex> = stats.endpoint_union.iter().copied().collect();
        for (x, union) in &unions {
            checks.push(ClaimCheck {
                claim: "construction_subset",
                j,
                other: *x,
                lhs: union.iter().filter(|v| !a_j.contains(v)).count() as f64,
                rhs: 0.0,
                holds: union.iter().all(|v| a_j.contains(v)),
            });
        }
        forest = next;
    }
    levels_rev.reverse();
    let levels = levels_rev;
    let sizes: Vec<usize> = levels.iter().map(|l| l.endpoints.len()).collect();
    let size = |j: usize| if j == 0 { 0 } else { sizes[j - 1] };
    let color_sets: Vec<BTreeSet<Color>> = levels.iter().map(|l| l.colors.iter().copied().collect()).collect();
    let end_sets: Vec<BTreeSet<Vertex>> = levels.iter().map(|l| l.endpoints.iter().copied().collect()).collect();
    let mut vacuous = Vec::new();

    for (idx, level) in levels.iter().enumerate() {
        let j = level.j;
        let (n_j, c) = (size(j) as f64, color_sets[idx].len() as f64);
        let jf = j as f64;
        checks.push(ClaimCheck {
            claim: "colors_lower",
            j,
            other: 0,
            lhs: n_j / 2.0 - jf,
            rhs: c,
            holds: n_j / 2.0 - jf <= c,
        });
        checks.push(ClaimCheck { claim: "colors_upper", j, other: 0, lhs: c, rhs: n_j - jf, holds: c <= n_j - jf });
        let degrees = class_degrees(g, &color_sets[idx]);
        for &x in &level.endpoints {
            let d = degrees[x] as f64;
            checks.push(ClaimCheck { claim: "degree_upper", j, other: x, lhs: d, rhs: c, holds: d <= c });
            let inside = g
                .neighbors(x)
                .iter()
                .filter(|(w, col)| color_sets[idx].contains(col) && end_sets[idx].contains(w))
                .count() as f64;
            let floor = size(j - 1) as f64 - delta_n;
            checks.push(ClaimCheck {
                claim: "degree_inside",
                j,
                other: x,
                lhs: inside,
                rhs: floor,
                holds: inside >= floor,
            });
        }
    }

    let mut edge_pairs = 0;
    for j in 2..=k {
        for l in j + 1..=k {
            edge_pairs += 1;
            let (nj, nl, nl1, nj1) = (size(j) as f64, size(l) as f64, size(l - 1) as f64, size(j - 1) as f64);
            let outside: Vec<Vertex> = end_sets[l - 1].difference(&end_sets[j - 1]).copied().collect();
            let count = outside
                .iter()
                .flat_map(|&x| g.neighbors(x).iter().map(move |&(w, c)| (w, c)))
                .filter(|(w, c)| end_sets[j - 1].contains(w) && color_sets[j - 1].contains(c))
                .count() as f64;
            let lower = (nl - nj) * (1.5 * nj - 2.0 * nl + nl1 - delta_n);
            let upper = nj * (nj - nj1 - j as f64 + delta_n);
            checks.push(ClaimCheck {
                claim: "edges_lower",
                j,
                other: l,
                lhs: lower,
                rhs: count,
                holds: lower <= count,
            });
            checks.push(ClaimCheck {
                claim: "edges_upper",
                j,
                other: l,
                lhs: count,
                rhs: upper,
                holds: count <= upper,
            });
        }
    }
    if edge_pairs == 0 {
        vacuous.push(format!("edge counts: no pair 2 <= j < l <= {k}"));
    }
    if k < 2 {
        vacuous.push("construction: a single level".into());
    }

    let increasing = sizes.first().is_some_and(|&s| s > 0) && sizes.windows(2).all(|w| w[0] < w[1]);
    let sequence_condition = increasing.then(|| {
        let m = ((3.0 * delta_n).ceil() as usize).max(1);
        let seq = sizes.iter().map(|&s| s as u64).collect();
        let input = SequenceCheckInput::new(Ratio::new(1, 6), m, seq).expect("increasing positive sizes");
        verify_sequence_condition(&input)
    });
    Ok(ChainReport { k, delta_n, levels, checks, vacuous, sizes, sequence_condition })
}
