//! The constructive pipeline: classify, refine a family of not-good spiders,
//! chain and connect its members into long spiders, and glue `t` of them
//! into a copy of `t*S` or `K_{s,t}^k`. Falls back to the oracle when the
//! construction does not go through.

mod assemble;
mod chain;
mod family;

pub use assemble::{
    assemble_blowup, blowup_descriptor, witness_of, Assembly, AssemblyFailure, DEFAULT_MAX_STARTS,
};
pub use chain::{
    build_paths, check_targets, connect_paths, gamma_schedule, start_of, BuiltPaths, ChainState, StepFailure,
};
pub use family::{check_conditions, containment_needs, disjoint_representatives, refine_family, SpiderFamily};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::goodness::{below, GoodnessTables};
use crate::graph::Graph;
use crate::oracle::{self, Containment, SearchBudget};
use crate::pattern::{PatternDescriptor, PatternKind};
use crate::spiders::LengthVector;
use crate::threshold::Thresholds;
use crate::witness::Witness;

#[derive(Clone, Debug)]
pub struct FindOptions {
    pub l: f64,
    /// Length vectors with more admissible-but-not-good spiders than this
    /// are skipped (their families would not fit in memory).
    pub max_family: u64,
    pub max_starts: usize,
    /// Budget of the oracle fallback.
    pub budget: SearchBudget,
    /// Skip the oracle fallback.
    pub constructive_only: bool,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions {
            l: 2.0,
            max_family: 200_000,
            max_starts: DEFAULT_MAX_STARTS,
            budget: SearchBudget::UNLIMITED,
            constructive_only: false,
        }
    }
}

/// One length vector tried by the constructive route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub lv: LengthVector,
    pub not_good: u64,
    pub family: usize,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindStatus {
    Found,
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct FindReport {
    pub status: FindStatus,
    pub witness: Option<Witness>,
    pub attempts: Vec<Attempt>,
}

/// Looks for `t` spiders with leg lengths `targets` on a shared leaf vector,
/// constructively first. Thresholds must cover lengths up to the total of
/// `targets`.
pub fn find_blowup(
    g: &Graph,
    targets: &[usize],
    t: usize,
    thresholds: &Thresholds,
    opts: &FindOptions,
) -> Result<FindReport> {
    if targets.is_empty() || targets.contains(&0) || t == 0 {
        return Err(invalid("targets must be >= 1 and t >= 1"));
    }
    let k = *targets.iter().max().unwrap();
    let mut tables = GoodnessTables::classify_paths(g, k, thresholds.clone())?;
    tables.classify_spiders(g, targets)?;
    pigeonhole_check(&tables, targets, g.n());

    let delta = g.min_degree();
    let mut attempts = Vec::new();
    let mut candidates: Vec<(LengthVector, u64)> = Vec::new();
    for w in below(targets) {
        let not_good = tables.spider_stats(&w).expect("classified").admissible_not_good();
        if not_good == 0 {
            continue;
        }
        if w.iter().filter(|&&l| l == 1).count() > 1 {
            log::info!("skipping {w:?}: two legs of length 1");
            attempts.push(Attempt {
                lv: w,
                not_good,
                family: 0,
                outcome: "skipped: two legs of length 1".into(),
            });
            continue;
        }
        candidates.push((w, not_good));
    }
    candidates.sort_by_key(|(_, c)| std::cmp::Reverse(*c));

    for (w, not_good) in candidates {
        let mut record = |family, outcome: String| {
            attempts.push(Attempt {
                lv: w.clone(),
                not_good,
                family,
                outcome,
            })
        };
        if delta == 0 {
            record(0, "skipped: minimum degree 0".into());
            continue;
        }
        if not_good > opts.max_family {
            record(0, format!("skipped: {not_good} spiders exceed the family limit"));
            continue;
        }
        let t0 = tables.admissible_not_good(g, &w)?;
        let family = refine_family(t0, thresholds, delta, opts.l)?;
        debug_assert_eq!(check_conditions(&family, thresholds), Ok(()));
        if family.is_empty() {
            record(0, "refined family is empty".into());
            continue;
        }
        match assemble_blowup(g, &family, targets, t, opts.max_starts) {
            Ok(a) => {
                record(family.len(), "assembled".into());
                return Ok(FindReport {
                    status: FindStatus::Found,
                    witness: Some(a.witness),
                    attempts,
                });
            }
            Err(e) => record(family.len(), e.to_string()),
        }
    }

    if opts.constructive_only {
        return Ok(FindReport {
            status: FindStatus::NotFound,
            witness: None,
            attempts,
        });
    }
    let desc = blowup_descriptor(targets, t);
    let (status, witness) = match oracle::contains(g, &desc, opts.budget)? {
        Containment::Found(w) => (FindStatus::Found, Some(w)),
        Containment::Absent => (FindStatus::NotFound, None),
        Containment::BudgetExhausted => (FindStatus::BudgetExhausted, None),
    };
    Ok(FindReport {
        status,
        witness,
        attempts,
    })
}

/// Leg lengths and copy count of a blowup pattern: `kst:s,t^k` gives
/// `([k; s], t)`, `spider:k1,..,ks^d*t` gives `([d*k1, .., d*ks], t)`.
pub fn blowup_targets(desc: &PatternDescriptor) -> Result<(Vec<usize>, usize)> {
    desc.validate()?;
    match &desc.kind {
        PatternKind::CompleteBipartite { s, t } if desc.blowup.is_none() => Ok((vec![desc.subdivision; *s], *t)),
        PatternKind::Spider(lens) => Ok((
            lens.iter().map(|l| l * desc.subdivision).collect(),
            desc.blowup.unwrap_or(1),
        )),
        _ => Err(invalid(format!("{desc} is not a spider blowup"))),
    }
}

/// [`find_blowup`] for `K_{s,t}^k`.
pub fn find_kstk(
    g: &Graph,
    s: usize,
    t: usize,
    k: usize,
    thresholds: &Thresholds,
    opts: &FindOptions,
) -> Result<FindReport> {
    if s < 2 || t < 2 || k < 2 {
        return Err(invalid("find_kstk needs s, t, k >= 2"));
    }
    find_blowup(g, &vec![k; s], t, thresholds, opts)
}

/// Good spiders number at most `f(l)` per leaf vector, so at most
/// `f(l) * n^s` in all. Exact counting makes a violation impossible.
fn pigeonhole_check(tables: &GoodnessTables, lv: &[usize], n: usize) {
    let Some(stats) = tables.spider_stats(lv) else {
        return;
    };
    let cap = tables.thresholds().cap(lv.iter().sum()).expect("classified");
    if let Some(c) = cap {
        let bound = (n as u128)
            .checked_pow(lv.len() as u32)
            .and_then(|p| p.checked_mul(u128::from(c)));
        if let Some(b) = bound {
            if u128::from(stats.good) > b {
                let offender = tables
                    .spider_counts(lv)
                    .and_then(|m| m.iter().filter(|(_, &x)| x > c).map(|(k, _)| k.clone()).min());
                panic!("good spiders exceed f(l) n^s; offending leaf vector {offender:?}");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::pattern::kst_subdivision;
    use crate::witness::Route;

    #[test]
    fn constructive_route_on_subdivided_k24() {
        let g = kst_subdivision(2, 4, 2).unwrap();
        let th = Thresholds::Constant(Some(1));
        let opts = FindOptions {
            constructive_only: true,
            ..FindOptions::default()
        };
        let r = find_kstk(&g, 2, 2, 2, &th, &opts).unwrap();
        let w = r.witness.expect("constructive witness");
        assert_eq!(w.route, Route::Constructive);
        assert!(oracle::verify_embedding(&g, &w));
    }

    #[test]
    fn c8_routes_depend_on_thresholds() {
        let g = generators::cycle(8).unwrap();
        // paper thresholds make every spider good: nothing to build from
        let paper = Thresholds::paper(2.0, 4).unwrap();
        let r = find_kstk(&g, 2, 2, 2, &paper, &FindOptions::default()).unwrap();
        assert_eq!(r.status, FindStatus::Found);
        let w = r.witness.unwrap();
        assert_eq!(w.route, Route::Oracle);
        assert!(oracle::verify_embedding(&g, &w));
        // at const:1 opposite vertices centre two spiders with one leaf vector
        let r = find_kstk(&g, 2, 2, 2, &Thresholds::Constant(Some(1)), &FindOptions::default()).unwrap();
        assert_eq!(r.witness.unwrap().route, Route::Constructive);
    }

    #[test]
    fn targets_from_descriptors() {
        let t = |s: &str| blowup_targets(&s.parse().unwrap());
        assert_eq!(t("kst:2,3^2").unwrap(), (vec![2, 2], 3));
        assert_eq!(t("spider:1,2*3").unwrap(), (vec![1, 2], 3));
        assert_eq!(t("spider:1,2^2*2").unwrap(), (vec![2, 4], 2));
        assert!(t("cycle:8").is_err());
    }

    #[test]
    fn parameters_checked() {
        let g = generators::cycle(8).unwrap();
        let th = Thresholds::Constant(Some(1));
        assert!(find_kstk(&g, 1, 2, 2, &th, &FindOptions::default()).is_err());
        assert!(find_blowup(&g, &[], 2, &th, &FindOptions::default()).is_err());
    }
}
