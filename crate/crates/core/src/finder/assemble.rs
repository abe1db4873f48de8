//! Repeated connection rounds: `t` spiders sharing a leaf vector and nothing
//! else form a copy of `t*S` (of `K_{s,t}^k` when all legs have length `k`).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::chain::{build_paths, check_targets, connect_paths, gamma_schedule, start_of, StepFailure};
use super::family::SpiderFamily;
use crate::graph::{Graph, Vertex};
use crate::oracle::check_embedding;
use crate::pattern::PatternDescriptor;
use crate::spiders::Spider;
use crate::witness::{Route, Witness};

/// Distinct starting spiders `R_0` tried before giving up.
pub const DEFAULT_MAX_STARTS: usize = 256;

#[derive(Clone, Debug)]
pub struct Assembly {
    pub witness: Witness,
    pub spiders: Vec<Spider>,
    pub r0: Spider,
    /// Size of the forbidden set before the last round.
    pub z_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyFailure {
    /// Most rounds completed from any start.
    pub rounds_completed: usize,
    pub starts_tried: usize,
    pub last: StepFailure,
}

impl fmt::Display for AssemblyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} after {} completed round(s), {} start(s) tried",
            self.last, self.rounds_completed, self.starts_tried
        )
    }
}

/// Descriptor of `t` copies of the spider with leg lengths `targets`.
pub fn blowup_descriptor(targets: &[usize], t: usize) -> PatternDescriptor {
    match targets {
        [k, rest @ ..] if rest.iter().all(|x| x == k) && targets.len() >= 2 => {
            PatternDescriptor::kst(targets.len(), t, *k)
        }
        _ => PatternDescriptor::spider_blowup(targets, t),
    }
}

/// Witness for spiders sharing leaf vector `roots`: path `(i, j)` runs from
/// leaf `i` to the centre of spider `j`.
pub fn witness_of(targets: &[usize], roots: &[Vertex], spiders: &[Spider], route: Route) -> Witness {
    let paths = (0..targets.len())
        .flat_map(|i| {
            spiders.iter().map(move |sp| {
                let mut p = sp.leg_path(i);
                p.reverse();
                p
            })
        })
        .collect();
    Witness {
        pattern: blowup_descriptor(targets, spiders.len()),
        roots: roots.to_vec(),
        paths,
        route,
    }
}

fn attempt(
    family: &SpiderFamily,
    r0: &Spider,
    targets: &[usize],
    t: usize,
) -> Result<(Vec<Spider>, usize), (usize, StepFailure)> {
    let roots = r0.leaf_vector();
    let mut z: HashSet<Vertex> = HashSet::new();
    let mut spiders = Vec::with_capacity(t);
    let mut z_size = 0;
    let mut warned = false;
    for round in 0..t {
        z_size = z.len();
        if !warned && z_size as f64 > family.l() {
            log::warn!("forbidden set has {z_size} vertices, more than L = {}", family.l());
            warned = true;
        }
        let built = build_paths(family, r0, &z, targets).map_err(|e| (round, e))?;
        let sp = connect_paths(family, &built, &z).map_err(|e| (round, e))?;
        debug_assert_eq!(sp.leaf_vector(), roots);
        z.extend(sp.vertices().filter(|v| !roots.contains(v)));
        spiders.push(sp);
    }
    Ok((spiders, z_size))
}

/// Builds `t` spiders with leg lengths `targets` on a common leaf vector,
/// each avoiding everything but the leaves of the earlier ones. Starting
/// spiders `R_0` are tried in canonical order of the members they come from.
pub fn assemble_blowup(
    g: &Graph,
    family: &SpiderFamily,
    targets: &[usize],
    t: usize,
    max_starts: usize,
) -> Result<Assembly, AssemblyFailure> {
    let fail = |last| AssemblyFailure {
        rounds_completed: 0,
        starts_tried: 0,
        last,
    };
    if family.is_empty() {
        return Err(fail(StepFailure::Precondition("empty family".into())));
    }
    if t == 0 {
        return Err(fail(StepFailure::Precondition("t must be >= 1".into())));
    }
    check_targets(family.lv(), targets).map_err(fail)?;
    let gamma = gamma_schedule(family.lv(), targets);
    let mut starts = BTreeSet::new();
    let mut best: Option<(usize, StepFailure)> = None;
    for m in family.members() {
        let r0 = start_of(m, &gamma);
        if !starts.insert(r0.clone()) {
            continue;
        }
        match attempt(family, &r0, targets, t) {
            Ok((spiders, z_size)) => {
                let witness = witness_of(targets, &r0.leaf_vector(), &spiders, Route::Constructive);
                if let Err(why) = check_embedding(g, &witness) {
                    panic!("assembled witness fails verification: {why}");
                }
                return Ok(Assembly {
                    witness,
                    spiders,
                    r0,
                    z_size,
                });
            }
            Err((rounds, e)) => {
                if best.as_ref().is_none_or(|(r, _)| rounds > *r) {
                    best = Some((rounds, e));
                }
            }
        }
        if starts.len() >= max_starts {
            break;
        }
    }
    let (rounds_completed, last) = best.expect("at least one start");
    Err(AssemblyFailure {
        rounds_completed,
        starts_tried: starts.len(),
        last,
    })
}
