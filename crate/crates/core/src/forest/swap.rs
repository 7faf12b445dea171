use crate::graph::{Color, ColoredGraph, Edge};

use super::{ForestError, ForestIndex, PathForest};

/// One elementary rewrite of a path forest: add `added` (joining endpoints of
/// two different paths) and, if its color is already used, drop the forest
/// edge `removed` of that color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Swap {
    pub added: Edge,
    pub removed: Option<Edge>,
    pub associated_color: Color,
}

/// Every swap applicable to `f`, sorted by added edge.
pub fn legal_swaps(f: &PathForest, g: &ColoredGraph) -> Vec<Swap> {
    let idx = ForestIndex::new(f, g);
    legal_swaps_indexed(f, g, &idx)
}

pub(crate) fn legal_swaps_indexed(f: &PathForest, g: &ColoredGraph, idx: &ForestIndex) -> Vec<Swap> {
    let ends = f.endpoints();
    let mut out = Vec::new();
    for x in ends.iter() {
        let (px, _) = idx.place[x].unwrap();
        for &(y, c) in g.neighbors(x) {
            if y <= x || !ends.contains(y) {
                continue;
            }
            let (py, _) = idx.place[y].unwrap();
            if px == py {
                continue;
            }
            out.push(Swap { added: Edge::new(x, y), removed: idx.color_edge.get(&c).copied(), associated_color: c });
        }
    }
    out
}

fn illegal(msg: impl Into<String>) -> ForestError {
    ForestError::IllegalSwap(msg.into())
}

/// Applies `s` and returns the new forest together with the change in the
/// number of paths (`-1` for a pure addition, `0` for an exchange).
pub fn apply_swap(f: &PathForest, s: &Swap, g: &ColoredGraph) -> Result<(PathForest, isize), ForestError> {
    let idx = ForestIndex::new(f, g);
    apply_swap_indexed(f, s, g, &idx)
}

pub(crate) fn apply_swap_indexed(
    f: &PathForest,
    s: &Swap,
    g: &ColoredGraph,
    idx: &ForestIndex,
) -> Result<(PathForest, isize), ForestError> {
    let Edge { u: x, v: y } = s.added;
    let color = g.color_of(x, y).ok_or_else(|| illegal(format!("{} is not an edge of the host", s.added)))?;
    if color != s.associated_color {
        return Err(illegal("associated color differs from the added edge's color"));
    }
    if !idx.is_endpoint(f, x) || !idx.is_endpoint(f, y) {
        return Err(illegal(format!("{} does not join two path endpoints", s.added)));
    }
    let (px, _) = idx.place[x].unwrap();
    let (py, _) = idx.place[y].unwrap();
    if px == py {
        return Err(illegal("both endpoints lie on the same path"));
    }
    match (s.removed, idx.color_edge.get(&color)) {
        (None, None) => {}
        (Some(r), Some(&held)) if r == held => {}
        (None, Some(_)) => return Err(illegal("color already used but no edge removed")),
        _ => return Err(illegal("removed edge is not the forest edge of the swap color")),
    }

    let mut a = f.paths[px].clone();
    if a[a.len() - 1] != x {
        a.reverse();
    }
    let mut b = f.paths[py].clone();
    if b[0] != y {
        b.reverse();
    }
    a.extend(b);

    let (keep, drop) = (px.min(py), px.max(py));
    let mut paths = f.paths.clone();
    paths[keep] = a;
    paths.remove(drop);

    if let Some(r) = s.removed {
        let (pi, k) = paths
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.windows(2).position(|w| Edge::new(w[0], w[1]) == r).map(|k| (i, k)))
            .expect("removed edge present after merge");
        let tail = paths[pi].split_off(k + 1);
        paths.push(tail);
    }
    let delta = paths.len() as isize - f.paths.len() as isize;
    Ok((PathForest::new(f.host, paths), delta))
}
