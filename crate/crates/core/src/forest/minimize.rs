use std::collections::HashSet;

use crate::graph::ColoredGraph;
use crate::par;
use crate::rng::SplitMix64;

use super::swap::{apply_swap_indexed, legal_swaps_indexed};
use super::{CanonicalForest, ForestIndex, PathForest, Swap};

/// Limits for [`swap_minimize`]. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Forests kept per BFS level.
    pub width: Option<usize>,
    /// BFS levels explored per round.
    pub depth: Option<usize>,
    /// Committed improvements before giving up.
    pub rounds: Option<usize>,
    /// Shuffles the order in which swaps are tried from each forest.
    pub seed: u64,
}

impl SearchBudget {
    pub fn unlimited(seed: u64) -> Self {
        Self { width: None, depth: None, rounds: None, seed }
    }

    pub fn bounded(width: usize, depth: usize, rounds: usize, seed: u64) -> Self {
        Self { width: Some(width), depth: Some(depth), rounds: Some(rounds), seed }
    }

    fn is_unlimited(&self) -> bool {
        self.width.is_none() && self.depth.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimality {
    /// The whole swap closure was explored: no reachable forest has fewer paths.
    SwapOptimal,
    /// The budget ran out before an improvement was found.
    BudgetSwapOptimal,
    /// The round limit stopped a search that was still improving.
    RoundsExhausted,
}

#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub forest: PathForest,
    /// Swaps that turn the input into `forest`, in order.
    pub swaps: Vec<Swap>,
    pub status: Optimality,
    pub rounds: usize,
    /// Distinct forests generated across all rounds.
    pub explored: usize,
}

struct Node {
    forest: PathForest,
    parent: usize,
    swap: Option<Swap>,
}

struct RoundResult {
    best: Option<usize>,
    complete: bool,
}

/// Searches the swap closure of `f` for forests with fewer paths.
///
/// Each round runs a breadth-first search over canonicalized forests. With a
/// bounded budget the first forest with fewer paths is committed immediately;
/// with an unlimited budget the round explores the entire closure and commits
/// its minimum, so the result is exactly swap-optimal.
pub fn swap_minimize(f: &PathForest, g: &ColoredGraph, budget: SearchBudget) -> MinimizeOutcome {
    let mut current = f.clone();
    let mut swaps = Vec::new();
    let mut explored = 0;
    let mut rounds = 0;
    loop {
        if current.path_count() <= 1 {
            return MinimizeOutcome { forest: current, swaps, status: Optimality::SwapOptimal, rounds, explored };
        }
        if budget.rounds.is_some_and(|r| rounds >= r) {
            return MinimizeOutcome { forest: current, swaps, status: Optimality::RoundsExhausted, rounds, explored };
        }
        let mut arena = vec![Node { forest: current.clone(), parent: usize::MAX, swap: None }];
        let res = search_round(&mut arena, g, &budget, rounds as u64);
        explored += arena.len();
        rounds += 1;
        match res.best {
            Some(best) => {
                let mut chain = Vec::new();
                let mut at = best;
                while at != 0 {
                    chain.push(arena[at].swap.unwrap());
                    at = arena[at].parent;
                }
                chain.reverse();
                swaps.extend(chain);
                current = arena.swap_remove(best).forest;
            }
            None => {
                let status = if res.complete { Optimality::SwapOptimal } else { Optimality::BudgetSwapOptimal };
                return MinimizeOutcome { forest: current, swaps, status, rounds, explored };
            }
        }
    }
}

fn search_round(arena: &mut Vec<Node>, g: &ColoredGraph, budget: &SearchBudget, round: u64) -> RoundResult {
    let start_p = arena[0].forest.path_count();
    let exhaustive = budget.is_unlimited();
    let mut visited: HashSet<CanonicalForest> = HashSet::new();
    visited.insert(arena[0].forest.canonical());
    let mut frontier = vec![0usize];
    let mut best: Option<usize> = None;
    let mut truncated = false;
    let mut level = 0;

    while !frontier.is_empty() {
        if budget.depth.is_some_and(|d| level >= d) {
            truncated = true;
            break;
        }
        level += 1;
        let expanded: Vec<Vec<(PathForest, Swap, CanonicalForest)>> = {
            let nodes: &Vec<Node> = arena;
            par::map(&frontier, |&at| {
                let f = &nodes[at].forest;
                let idx = ForestIndex::new(f, g);
                let mut moves = legal_swaps_indexed(f, g, &idx);
                let stream = (round << 40) ^ at as u64;
                SplitMix64::derive(budget.seed, stream).shuffle(&mut moves);
                moves
                    .into_iter()
                    .map(|s| {
                        let (child, _) = apply_swap_indexed(f, &s, g, &idx).expect("generated swaps are legal");
                        let key = child.canonical();
                        (child, s, key)
                    })
                    .collect()
            })
        };
        let mut next = Vec::new();
        for (parent, children) in frontier.iter().zip(expanded) {
            for (child, s, key) in children {
                if !visited.insert(key) {
                    continue;
                }
                let p = child.path_count();
                arena.push(Node { forest: child, parent: *parent, swap: Some(s) });
                let id = arena.len() - 1;
                let best_p = best.map_or(start_p, |b| arena[b].forest.path_count());
                if p < best_p {
                    best = Some(id);
                    if !exhaustive {
                        return RoundResult { best, complete: false };
                    }
                }
                if budget.width.is_some_and(|w| next.len() >= w) {
                    truncated = true;
                } else {
                    next.push(id);
                }
            }
        }
        frontier = next;
    }
    RoundResult { best, complete: !truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{apply_swap, greedy_rainbow_forest, tests::k4};
    use crate::gen::{rainbow_complete, random_proper};

    #[test]
    fn hamilton_path_is_already_optimal() {
        let g = rainbow_complete(6);
        let f = PathForest::validated(&g, vec![(0..6).collect()]).unwrap();
        let out = swap_minimize(&f, &g, SearchBudget::unlimited(0));
        assert_eq!(out.forest, f);
        assert_eq!(out.status, Optimality::SwapOptimal);
        assert!(out.swaps.is_empty());
    }

    #[test]
    fn rainbow_singletons_reach_hamilton_path() {
        for n in [3, 5, 7] {
            let g = rainbow_complete(n);
            let f = PathForest::singletons(&g);
            let out = swap_minimize(&f, &g, SearchBudget::bounded(50, 3, 100, 1));
            assert_eq!(out.forest.path_count(), 1);
            out.forest.validate(&g).unwrap();
        }
    }

    #[test]
    fn k4_minimum_is_two_paths() {
        let g = k4();
        let out = swap_minimize(&PathForest::singletons(&g), &g, SearchBudget::unlimited(3));
        assert_eq!(out.forest.path_count(), 2);
        assert_eq!(out.status, Optimality::SwapOptimal);
    }

    #[test]
    fn recorded_swaps_replay() {
        for seed in 0..10 {
            let g = random_proper(8, 1, seed).unwrap();
            let start = PathForest::singletons(&g);
            let out = swap_minimize(&start, &g, SearchBudget::bounded(20, 4, 50, seed));
            let mut f = start.clone();
            for s in &out.swaps {
                f = apply_swap(&f, s, &g).unwrap().0;
                f.validate(&g).unwrap();
            }
            assert_eq!(f.canonical(), out.forest.canonical());
            assert!(out.forest.path_count() <= start.path_count());
        }
    }

    #[test]
    fn never_increases_path_count() {
        for seed in 0..10 {
            let g = random_proper(9, 2, seed).unwrap();
            let greedy = greedy_rainbow_forest(&g, 0.1, 0.2).forest;
            let out = swap_minimize(&greedy, &g, SearchBudget::bounded(30, 3, 10, seed));
            assert!(out.forest.path_count() <= greedy.path_count());
            out.forest.validate(&g).unwrap();
        }
    }
}
