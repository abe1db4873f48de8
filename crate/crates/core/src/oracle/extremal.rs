//! Exact `ex(n, H)` for tiny `n` by descending orderly generation.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use super::canon::{canonical_code, from_code};
use super::embed::{self, Limits, Search};
use super::hillclimb::hill_climb_free;
use super::SearchBudget;
use crate::error::Result;
use crate::generators;
use crate::graph::Graph;
use crate::pattern::PatternDescriptor;

/// Largest `n` attempted exhaustively.
pub const MAX_EXHAUSTIVE_N: usize = 10;

/// Restarts used when falling back to the heuristic.
const HEURISTIC_PASSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub n: usize,
    pub pattern: PatternDescriptor,
    pub value: usize,
    /// A pattern-free graph with `value` edges.
    pub witness: Graph,
    /// Whether `value` is proven maximal.
    pub exhaustive: bool,
}

enum Level {
    Free(Graph),
    AllContain(Vec<u64>),
    OutOfBudget,
}

/// `ex(n, H)`. For `n <= MAX_EXHAUSTIVE_N` the isomorphism classes are
/// walked level by level from `K_n` downwards (each level obtained by
/// deleting one edge from every class of the level above), stopping at the
/// first level holding a pattern-free graph. Larger `n`, or running out of
/// budget, falls back to [`hill_climb_free`] with `exhaustive = false`.
pub fn extremal_number(n: usize, desc: &PatternDescriptor, budget: SearchBudget) -> Result<ExtremalResult> {
    desc.validate()?;
    let p = desc.to_pattern().instantiate();
    let heuristic = || -> Result<ExtremalResult> {
        let g = hill_climb_free(n, desc, HEURISTIC_PASSES, 0)?;
        Ok(ExtremalResult {
            n,
            pattern: desc.clone(),
            value: g.m(),
            witness: g,
            exhaustive: false,
        })
    };
    if n > MAX_EXHAUSTIVE_N {
        return heuristic();
    }
    if p.n() > n {
        let g = generators::complete(n);
        return Ok(ExtremalResult {
            n,
            pattern: desc.clone(),
            value: g.m(),
            witness: g,
            exhaustive: true,
        });
    }
    let limits = budget.limits();
    let mut level = vec![canonical_code(&generators::complete(n))?];
    loop {
        match scan(&p, n, &level, limits)? {
            Level::Free(g) => {
                return Ok(ExtremalResult {
                    n,
                    pattern: desc.clone(),
                    value: g.m(),
                    witness: g,
                    exhaustive: true,
                })
            }
            Level::OutOfBudget => {
                log::warn!("extremal search for n={n} ran out of budget; using the heuristic");
                return heuristic();
            }
            Level::AllContain(codes) => level = codes,
        }
    }
}

/// Classifies one level; on "all contain" returns the next level down.
fn scan(p: &Graph, n: usize, level: &[u64], limits: Limits) -> Result<Level> {
    if limits.deadline.is_some_and(|d| Instant::now() >= d) {
        return Ok(Level::OutOfBudget);
    }
    let results: Vec<Search> = level
        .par_iter()
        .map(|&c| embed::find(p, &from_code(n, c), &[], limits))
        .collect();
    if results.contains(&Search::Exhausted) {
        return Ok(Level::OutOfBudget);
    }
    // levels are sorted, so the first free graph is the smallest code
    if let Some(i) = results.iter().position(|r| *r == Search::Absent) {
        return Ok(Level::Free(from_code(n, level[i])));
    }
    let children: Vec<Vec<u64>> = level
        .par_iter()
        .map(|&c| {
            let g = from_code(n, c);
            g.edges()
                .map(|(u, v)| {
                    let mut h = g.clone();
                    h.remove_edge(u, v);
                    canonical_code(&h).expect("n within canonical range")
                })
                .collect()
        })
        .collect();
    let next: BTreeSet<u64> = children.into_iter().flatten().collect();
    Ok(Level::AllContain(next.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_pattern_size_everything_is_free() {
        for n in 1..=7 {
            let r = extremal_number(n, &PatternDescriptor::cycle(8), SearchBudget::UNLIMITED).unwrap();
            assert_eq!(r.value, n * (n - 1) / 2);
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn four_cycle_on_four_vertices() {
        let r = extremal_number(4, &PatternDescriptor::cycle(4), SearchBudget::UNLIMITED).unwrap();
        assert_eq!(r.value, 4);
        assert!(r.exhaustive);
        assert_eq!(r.witness.m(), 4);
    }

    #[test]
    fn triangle_free_matches_mantel() {
        for n in 3..=7 {
            let r = extremal_number(n, &PatternDescriptor::cycle(3), SearchBudget::UNLIMITED).unwrap();
            assert_eq!(r.value, n * n / 4, "n={n}");
        }
    }
}
