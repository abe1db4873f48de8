//! Growing long legs out of a refined family by alternating chains
//! `R_0 ⊂ S_1 ~ T_1 ⊃ R_1 ⊂ S_2 ~ ...`, and closing them into spiders.

use std::collections::HashSet;
use std::fmt;

use super::family::SpiderFamily;
use crate::graph::Vertex;
use crate::spiders::{LeafVector, Spider};

/// Why a chain or connection step found nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepFailure {
    Precondition(String),
    /// No `S_j` contains `R_{j-1}` while avoiding the forbidden set.
    NoS(usize),
    /// No `T_j` shares the leaf vector of `S_j` and is otherwise disjoint.
    NoT(usize),
    /// No member closes the paths into a spider.
    NoConnector,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::Precondition(m) => write!(f, "precondition: {m}"),
            StepFailure::NoS(j) => write!(f, "no admissible S_{j}"),
            StepFailure::NoT(j) => write!(f, "no admissible T_{j}"),
            StepFailure::NoConnector => write!(f, "no connecting member"),
        }
    }
}

/// The full record of one chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    /// `gamma[i][j]`: whether step `j` lengthens path `i`.
    pub gamma: Vec<Vec<usize>>,
    pub r: Vec<Spider>,
    pub s: Vec<Spider>,
    pub t: Vec<Spider>,
    /// `x[i][c]` for columns `c = 0..2 * s.len()`.
    pub x: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltPaths {
    /// `paths[i]` runs from `v_i` to `w_i`.
    pub paths: Vec<Vec<Vertex>>,
    /// `(w_1, ..., w_s)`, the leaf vector of a family member.
    pub leaves: LeafVector,
    pub chain: ChainState,
}

/// Rejects targets the chain cannot serve.
pub fn check_targets(lv: &[usize], targets: &[usize]) -> Result<(), StepFailure> {
    if targets.len() != lv.len() {
        return Err(StepFailure::Precondition(format!(
            "{} targets for {} legs",
            targets.len(),
            lv.len()
        )));
    }
    if lv.iter().zip(targets).any(|(l, k)| l > k) {
        return Err(StepFailure::Precondition(format!("targets {targets:?} below lengths {lv:?}")));
    }
    if lv.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(StepFailure::Precondition(format!("{lv:?} has two legs of length 1")));
    }
    Ok(())
}

/// `gamma[i]`: parity bit first, then ones at the earliest positions.
pub fn gamma_schedule(lv: &[usize], targets: &[usize]) -> Vec<Vec<usize>> {
    let extra: Vec<usize> = lv.iter().zip(targets).map(|(l, k)| k - l).collect();
    let steps = extra.iter().map(|e| e / 2).max().unwrap_or(0) + 1;
    extra
        .iter()
        .map(|&e| {
            let mut g = vec![0; steps];
            g[0] = e % 2;
            for x in g.iter_mut().skip(1).take(e / 2) {
                *x = 1;
            }
            g
        })
        .collect()
}

/// The generalised spider `R_0`: member `m` with leg `i` cut by `gamma[i][0]`.
pub fn start_of(m: &Spider, gamma: &[Vec<usize>]) -> Spider {
    let target: Vec<usize> = m.legs.iter().zip(gamma).map(|(leg, g)| leg.len() - g[0]).collect();
    m.truncate(&target)
}

fn truncation(lv: &[usize], gamma: &[Vec<usize>], j: usize) -> Vec<usize> {
    lv.iter().zip(gamma).map(|(l, g)| l - g[j]).collect()
}

/// Paths `P_i` of length `k_i - l_i` from the leaves of `r0` to the leaf
/// vector of some member, pairwise disjoint and avoiding `z`.
///
/// Every choice is the canonically first member that fits. The chain stops
/// after the last step that lengthens some path; later steps would only
/// repeat the same column of the grid.
pub fn build_paths(
    family: &SpiderFamily,
    r0: &Spider,
    z: &HashSet<Vertex>,
    targets: &[usize],
) -> Result<BuiltPaths, StepFailure> {
    let lv = family.lv();
    check_targets(lv, targets)?;
    let gamma = gamma_schedule(lv, targets);
    let steps = gamma[0].len();
    if r0.length_vector() != truncation(lv, &gamma, 0) {
        return Err(StepFailure::Precondition(format!(
            "R_0 has lengths {:?}, parity needs {:?}",
            r0.length_vector(),
            truncation(lv, &gamma, 0)
        )));
    }
    if family.containing(r0).next().is_none() {
        return Err(StepFailure::Precondition("R_0 is not a truncation of a member".into()));
    }
    if r0.leaf_vector().iter().any(|v| z.contains(v)) {
        return Err(StepFailure::Precondition("Z meets the leaves of R_0".into()));
    }

    let mut seen: HashSet<Vertex> = HashSet::new();
    let mut chain = ChainState {
        gamma: gamma.clone(),
        r: vec![r0.clone()],
        s: Vec::new(),
        t: Vec::new(),
        x: vec![Vec::with_capacity(2 * steps); lv.len()],
    };
    for j in 1..=steps {
        let r = chain.r[j - 1].clone();
        let inside: HashSet<Vertex> = r.vertices().collect();
        let s = family
            .containing(&r)
            .find(|s| {
                s.vertices()
                    .filter(|v| !inside.contains(v))
                    .all(|v| !z.contains(&v) && !seen.contains(&v))
            })
            .ok_or(StepFailure::NoS(j))?
            .clone();
        seen.extend(s.vertices());
        for (i, col) in chain.x.iter_mut().enumerate() {
            col.push(r.leaf(i));
            col.push(s.leaf(i));
        }
        if j < steps {
            let t = family
                .with_leaf(&s.leaf_vector())
                .find(|t| {
                    t.non_leaf_vertices()
                        .iter()
                        .all(|v| !z.contains(v) && !seen.contains(v))
                })
                .ok_or(StepFailure::NoT(j))?
                .clone();
            seen.extend(t.vertices());
            chain.r.push(t.truncate(&truncation(lv, &gamma, j)));
            chain.t.push(t);
        }
        chain.s.push(s);
    }

    let cols = 2 * steps;
    for c in 0..cols {
        let column: HashSet<Vertex> = chain.x.iter().map(|row| row[c]).collect();
        assert_eq!(column.len(), lv.len(), "grid column {c} repeats a vertex");
    }
    let paths: Vec<Vec<Vertex>> = chain
        .x
        .iter()
        .map(|row| {
            let mut p = row.clone();
            p.dedup();
            p
        })
        .collect();
    let mut all = HashSet::new();
    for (i, p) in paths.iter().enumerate() {
        assert_eq!(p.len(), targets[i] - lv[i] + 1, "path {i} has the wrong length");
        for v in p {
            assert!(!z.contains(v), "path {i} enters Z");
            assert!(all.insert(*v), "paths share vertex {v}");
        }
    }
    let leaves = chain.s.last().expect("at least one step").leaf_vector();
    Ok(BuiltPaths { paths, leaves, chain })
}

/// Closes built paths into a spider with leaf vector `(v_1, ..., v_s)`
/// through the first member with leaf vector `(w_1, ..., w_s)` that avoids
/// `z` and meets the paths only at the `w_i`.
pub fn connect_paths(family: &SpiderFamily, built: &BuiltPaths, z: &HashSet<Vertex>) -> Result<Spider, StepFailure> {
    let on_paths: HashSet<Vertex> = built.paths.iter().flatten().copied().collect();
    let ends: HashSet<Vertex> = built.leaves.iter().copied().collect();
    let m = family
        .with_leaf(&built.leaves)
        .find(|m| {
            m.vertices()
                .all(|v| !z.contains(&v) && (!on_paths.contains(&v) || ends.contains(&v)))
        })
        .ok_or(StepFailure::NoConnector)?;
    let legs = m
        .legs
        .iter()
        .zip(&built.paths)
        .map(|(leg, p)| {
            let mut q = leg.clone();
            q.extend(p.iter().rev().skip(1));
            q
        })
        .collect();
    Ok(Spider { centre: m.centre, legs })
}
