use std::collections::HashSet;

use crate::graph::{ColoredGraph, Vertex};

use super::{ForestError, PathForest};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonCycle {
    /// Each vertex once; the closing edge joins the last vertex to the first.
    pub vertices: Vec<Vertex>,
    pub distinct_colors: usize,
}

/// Stitches the paths of a spanning forest of a complete graph into a
/// Hamilton cycle.
///
/// Paths are appended one at a time; from the current tail the connector is
/// chosen greedily, preferring a color not yet on the cycle, scanning the
/// remaining paths in forest order and each path forward before reversed.
/// Every forest edge stays on the cycle, so at least `n - p(F)` colors appear.
pub fn hamilton_from_forest(f: &PathForest, g: &ColoredGraph) -> Result<HamiltonCycle, ForestError> {
    let n = g.n();
    if n < 3 {
        return Err(ForestError::NTooSmall(n));
    }
    if !g.is_complete() {
        return Err(ForestError::NotComplete);
    }
    if !f.is_spanning(n) {
        return Err(ForestError::NotSpanning);
    }
    f.validate(g)?;

    let paths = f.paths();
    let mut used: HashSet<u32> = f.used_colors(g).into_iter().collect();
    let mut cycle: Vec<Vertex> = paths[0].clone();
    let mut remaining: Vec<usize> = (1..paths.len()).collect();

    while !remaining.is_empty() {
        let tail = *cycle.last().unwrap();
        let mut fallback = None;
        let mut chosen = None;
        'scan: for (slot, &pi) in remaining.iter().enumerate() {
            let p = &paths[pi];
            for reversed in [false, true] {
                let head = if reversed { p[p.len() - 1] } else { p[0] };
                let c = g.color_of(tail, head).expect("complete host");
                if fallback.is_none() {
                    fallback = Some((slot, reversed));
                }
                if !used.contains(&c) {
                    chosen = Some((slot, reversed));
                    break 'scan;
                }
            }
        }
        let (slot, reversed) = chosen.or(fallback).unwrap();
        let pi = remaining.remove(slot);
        let head = if reversed { *paths[pi].last().unwrap() } else { paths[pi][0] };
        used.insert(g.color_of(tail, head).unwrap());
        if reversed {
            cycle.extend(paths[pi].iter().rev());
        } else {
            cycle.extend(paths[pi].iter());
        }
    }
    Ok(HamiltonCycle { distinct_colors: cycle_colors(g, &cycle).len(), vertices: cycle })
}

fn cycle_colors(g: &ColoredGraph, cycle: &[Vertex]) -> HashSet<u32> {
    (0..cycle.len()).map(|i| g.color_of(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap()).collect()
}
