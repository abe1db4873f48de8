//! Ground truth: pattern containment by backtracking, witness verification,
//! exact extremal numbers for tiny `n` and heuristic pattern-free graphs.

mod canon;
mod embed;
mod extremal;
mod hillclimb;
mod verify;

use std::time::{Duration, Instant};

pub use canon::{canonical_code, from_code, isomorphic, MAX_CANON_N};
pub use extremal::{extremal_number, ExtremalResult, MAX_EXHAUSTIVE_N};
pub use hillclimb::{
    extend_to_maximal, hill_climb_free, is_edge_maximal, is_pattern_free, random_threshold_free, EdgeProbe,
};
pub use verify::{check_embedding, verify_embedding};

use embed::{Limits, Search};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::pattern::{Pattern, PatternDescriptor};
use crate::witness::{Route, Witness};

/// Optional caps on a search. Exceeding either yields
/// [`Containment::BudgetExhausted`], never a false "absent".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        node_limit: None,
        time_limit: None,
    };

    pub fn new(node_limit: Option<u64>, time_limit: Option<Duration>) -> Result<Self> {
        if node_limit == Some(0) || time_limit == Some(Duration::ZERO) {
            return Err(invalid("search budgets must be positive"));
        }
        Ok(SearchBudget {
            node_limit,
            time_limit,
        })
    }

    pub(crate) fn limits(&self) -> Limits {
        Limits {
            node_limit: self.node_limit,
            deadline: self.time_limit.map(|d| Instant::now() + d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Found(Witness),
    Absent,
    BudgetExhausted,
}

impl Containment {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Containment::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Reads a witness off a vertex map of the instantiated pattern.
pub(crate) fn witness_from_map(desc: &PatternDescriptor, pattern: &Pattern, map: &[Vertex]) -> Witness {
    Witness {
        pattern: desc.clone(),
        roots: pattern.roots.iter().map(|&r| map[r]).collect(),
        paths: pattern
            .edge_paths()
            .into_iter()
            .map(|p| p.into_iter().map(|v| map[v]).collect())
            .collect(),
        route: Route::Oracle,
    }
}

/// Whether `g` contains the pattern, with a witness when it does.
pub fn contains(g: &Graph, desc: &PatternDescriptor, budget: SearchBudget) -> Result<Containment> {
    desc.validate()?;
    let pattern = desc.to_pattern();
    let p = pattern.instantiate();
    if p.n() > g.n() || p.m() > g.m() {
        return Ok(Containment::Absent);
    }
    Ok(match embed::find_par(&p, g, budget.limits()) {
        Search::Found(map) => {
            let w = witness_from_map(desc, &pattern, &map);
            debug_assert_eq!(check_embedding(g, &w), Ok(()));
            Containment::Found(w)
        }
        Search::Absent => Containment::Absent,
        Search::Exhausted => Containment::BudgetExhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn c8_contains_k22_squared() {
        let desc: PatternDescriptor = "kst:2,2^2".parse().unwrap();
        let c8 = generators::cycle(8).unwrap();
        let w = contains(&c8, &desc, SearchBudget::UNLIMITED).unwrap();
        assert!(verify_embedding(&c8, w.witness().unwrap()));
        let c7 = generators::cycle(7).unwrap();
        assert_eq!(contains(&c7, &desc, SearchBudget::UNLIMITED).unwrap(), Containment::Absent);
    }

    #[test]
    fn petersen_contains_k22_squared() {
        // decided once by the full search and frozen
        let desc: PatternDescriptor = "kst:2,2^2".parse().unwrap();
        let r = contains(&generators::petersen(), &desc, SearchBudget::UNLIMITED).unwrap();
        assert!(matches!(r, Containment::Found(_)));
    }

    #[test]
    fn budget_is_distinct_from_absence() {
        let desc = PatternDescriptor::kst(3, 3, 2);
        let g = generators::random_gnm(40, 200, 1).unwrap();
        let b = SearchBudget::new(Some(5), None).unwrap();
        assert_eq!(contains(&g, &desc, b).unwrap(), Containment::BudgetExhausted);
        assert!(SearchBudget::new(Some(0), None).is_err());
    }
}
