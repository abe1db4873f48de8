//! Refined spider families and disjoint representatives.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{invalid, Result};
use crate::graph::Vertex;
use crate::spiders::{LeafVector, LengthVector, Spider};
use crate::threshold::{at_least_half, Cap, Thresholds};

/// `(gamma mask, truncated spider flattened as centre then legs)`. The leg
/// lengths are implied by the family's length vector and the mask.
type SubKey = (u32, Vec<Vertex>);

fn sub_key(s: &Spider, mask: u32) -> SubKey {
    let mut flat = vec![s.centre];
    for (i, leg) in s.legs.iter().enumerate() {
        let keep = leg.len() - (mask >> i & 1) as usize;
        flat.extend_from_slice(&leg[..keep]);
    }
    (mask, flat)
}

/// `ceil(delta^w / L^2)` for `w = 0..=s`, evaluated exactly (`L` is taken
/// at its exact binary value) and saturated to `u64`.
pub fn containment_needs(delta: usize, l: f64, s: usize) -> Result<Vec<u64>> {
    let l = BigRational::from_float(l)
        .filter(|l| *l >= BigRational::from_integer(1.into()))
        .ok_or_else(|| invalid(format!("L = {l} must be a finite real >= 1")))?;
    let l2 = &l * &l;
    let mut out = Vec::with_capacity(s + 1);
    let mut pow = BigInt::from(1);
    for _ in 0..=s {
        let q = BigRational::from_integer(pow.clone()) / &l2;
        out.push(q.ceil().to_integer().to_u64().unwrap_or(u64::MAX));
        pow *= delta;
    }
    Ok(out)
}

/// A set of spiders with one length vector, indexed by leaf vector and by
/// `gamma`-truncation.
#[derive(Clone, Debug)]
pub struct SpiderFamily {
    lv: LengthVector,
    members: Vec<Spider>,
    by_leaf: BTreeMap<LeafVector, Vec<usize>>,
    by_sub: HashMap<SubKey, Vec<usize>>,
    delta: usize,
    l: f64,
    thresholds: String,
}

impl SpiderFamily {
    fn build(lv: LengthVector, members: Vec<Spider>, delta: usize, l: f64, thresholds: String) -> Self {
        let mut by_leaf: BTreeMap<LeafVector, Vec<usize>> = BTreeMap::new();
        let mut by_sub: HashMap<SubKey, Vec<usize>> = HashMap::new();
        let masks = 1u32 << lv.len();
        for (i, m) in members.iter().enumerate() {
            by_leaf.entry(m.leaf_vector()).or_default().push(i);
            for mask in 0..masks {
                by_sub.entry(sub_key(m, mask)).or_default().push(i);
            }
        }
        SpiderFamily {
            lv,
            members,
            by_leaf,
            by_sub,
            delta,
            l,
            thresholds,
        }
    }

    pub fn lv(&self) -> &[usize] {
        &self.lv
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[Spider] {
        &self.members
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Label of the threshold mode used in refinement.
    pub fn thresholds(&self) -> &str {
        &self.thresholds
    }

    pub fn leaf_vectors(&self) -> impl Iterator<Item = &LeafVector> {
        self.by_leaf.keys()
    }

    /// Members with the given leaf vector, canonical order.
    pub fn with_leaf<'a>(&'a self, leaf: &[Vertex]) -> impl Iterator<Item = &'a Spider> + 'a {
        self.by_leaf
            .get(leaf)
            .into_iter()
            .flatten()
            .map(|&i| &self.members[i])
    }

    /// Members containing `r` as a subspider, where `r` drops at most one
    /// edge from each leg. Canonical order.
    pub fn containing<'a>(&'a self, r: &Spider) -> impl Iterator<Item = &'a Spider> + 'a {
        let key = (r.legs.len() == self.lv.len())
            .then(|| {
                let mut mask = 0u32;
                for (i, (leg, &l)) in r.legs.iter().zip(&self.lv).enumerate() {
                    match l.checked_sub(leg.len()) {
                        Some(0) => {}
                        Some(1) => mask |= 1 << i,
                        _ => return None,
                    }
                }
                let mut flat = vec![r.centre];
                flat.extend(r.legs.iter().flatten());
                Some((mask, flat))
            })
            .flatten();
        key.and_then(|k| self.by_sub.get(&k))
            .into_iter()
            .flatten()
            .map(|&i| &self.members[i])
    }
}

/// The discarding loop: while some member's leaf vector has fewer than
/// `f(l)/2` members, drop the canonically smallest such member; otherwise,
/// while some member has a `gamma`-truncation contained in fewer than
/// `delta^|gamma| / L^2` members, drop the smallest such member.
pub fn refine_family(t0: Vec<Spider>, thresholds: &Thresholds, delta: usize, l: f64) -> Result<SpiderFamily> {
    if delta == 0 {
        return Err(invalid("delta must be positive"));
    }
    let lv = t0.first().map(Spider::length_vector).unwrap_or_default();
    if t0.iter().any(|s| s.length_vector() != lv) {
        return Err(invalid("family members must share one length vector"));
    }
    let needs = containment_needs(delta, l, lv.len())?;
    let label = thresholds.label();
    if t0.is_empty() {
        return Ok(SpiderFamily::build(lv, t0, delta, l, label));
    }
    let cap: Cap = thresholds.cap(lv.iter().sum())?;
    let mut members = t0;
    members.sort();
    members.dedup();

    let masks = 1u32 << lv.len();
    let n = members.len();
    let leaves: Vec<LeafVector> = members.iter().map(Spider::leaf_vector).collect();
    let mut leaf_groups: HashMap<&LeafVector, Vec<usize>> = HashMap::new();
    for (i, lf) in leaves.iter().enumerate() {
        leaf_groups.entry(lf).or_default().push(i);
    }
    let mut leaf_count: HashMap<&LeafVector, u64> =
        leaf_groups.iter().map(|(k, v)| (*k, v.len() as u64)).collect();
    let subs: Vec<Vec<SubKey>> = members
        .iter()
        .map(|m| (0..masks).map(|mask| sub_key(m, mask)).collect())
        .collect();
    let mut sub_groups: HashMap<&SubKey, Vec<usize>> = HashMap::new();
    for (i, keys) in subs.iter().enumerate() {
        for k in keys {
            sub_groups.entry(k).or_default().push(i);
        }
    }
    let mut sub_count: HashMap<&SubKey, u64> = sub_groups.iter().map(|(k, v)| (*k, v.len() as u64)).collect();
    let need = |k: &SubKey| needs[k.0.count_ones() as usize];

    let mut alive = vec![true; n];
    let mut viol_i = BTreeSet::new();
    let mut viol_ii = BTreeSet::new();
    for i in 0..n {
        if !at_least_half(cap, leaf_count[&leaves[i]]) {
            viol_i.insert(i);
        }
        if subs[i].iter().any(|k| sub_count[k] < need(k)) {
            viol_ii.insert(i);
        }
    }
    loop {
        let x = match viol_i.pop_first() {
            Some(x) => x,
            None => match viol_ii.pop_first() {
                Some(x) => x,
                None => break,
            },
        };
        alive[x] = false;
        viol_ii.remove(&x);
        let c = leaf_count.get_mut(&leaves[x]).unwrap();
        let was_ok = at_least_half(cap, *c);
        *c -= 1;
        if was_ok && !at_least_half(cap, *c) {
            viol_i.extend(leaf_groups[&leaves[x]].iter().filter(|&&i| alive[i]));
        }
        for k in &subs[x] {
            let c = sub_count.get_mut(k).unwrap();
            let was_ok = *c >= need(k);
            *c -= 1;
            if was_ok && *c < need(k) {
                viol_ii.extend(sub_groups[k].iter().filter(|&&i| alive[i]));
            }
        }
    }
    let kept: Vec<Spider> = members
        .into_iter()
        .zip(alive)
        .filter_map(|(m, a)| a.then_some(m))
        .collect();
    log::debug!("refined family for {lv:?}: {} of {n} kept", kept.len());
    Ok(SpiderFamily::build(lv, kept, delta, l, label))
}

/// Re-derives both refinement conditions from scratch. `Err` names the first
/// violation.
pub fn check_conditions(family: &SpiderFamily, thresholds: &Thresholds) -> Result<(), String> {
    let members = family.members();
    if members.is_empty() {
        return Ok(());
    }
    let lv = family.lv();
    let cap = thresholds.cap(lv.iter().sum()).map_err(|e| e.to_string())?;
    let mut leaf_count: BTreeMap<LeafVector, u64> = BTreeMap::new();
    for m in members {
        *leaf_count.entry(m.leaf_vector()).or_insert(0) += 1;
    }
    let gammas: Vec<Vec<usize>> = (0..1u32 << lv.len())
        .map(|mask| (0..lv.len()).map(|i| (mask >> i & 1) as usize).collect())
        .collect();
    let mut contained: BTreeMap<Spider, u64> = BTreeMap::new();
    for m in members {
        let subs: BTreeSet<Spider> = gammas
            .iter()
            .map(|g| {
                let target: Vec<usize> = lv.iter().zip(g).map(|(l, g)| l - g).collect();
                m.subspider(&target).expect("gamma truncation fits")
            })
            .collect();
        for s in subs {
            *contained.entry(s).or_insert(0) += 1;
        }
    }
    let l = BigRational::from_float(family.l()).ok_or("L is not finite")?;
    for m in members {
        let c = leaf_count[&m.leaf_vector()];
        if !at_least_half(cap, c) {
            return Err(format!("condition (i): leaf vector {:?} has {c} members", m.leaf_vector()));
        }
        for g in &gammas {
            let target: Vec<usize> = lv.iter().zip(g).map(|(l, g)| l - g).collect();
            let sub = m.subspider(&target).expect("gamma truncation fits");
            let count = contained[&sub];
            let w: usize = g.iter().sum();
            let lhs = BigRational::from_integer(count.into()) * &l * &l;
            let rhs = BigRational::from_integer(BigInt::from(family.delta()).pow(w as u32));
            if lhs < rhs {
                return Err(format!(
                    "condition (ii): truncation {sub:?} of {m:?} lies in {count} members"
                ));
            }
        }
    }
    if members.windows(2).any(|w| w[0] >= w[1]) {
        return Err("members are not in strictly increasing canonical order".into());
    }
    Ok(())
}

/// Greedy maximal set of members with leaf vector `leaf` that pairwise share
/// only their leaves, scanned in canonical order and stopped at `quota`.
/// The flag reports a shortfall.
pub fn disjoint_representatives(family: &SpiderFamily, leaf: &[Vertex], quota: usize) -> (Vec<Spider>, bool) {
    let mut kept = Vec::new();
    if quota == 0 {
        return (kept, false);
    }
    let mut used: HashSet<Vertex> = HashSet::new();
    for m in family.with_leaf(leaf) {
        let inner = m.non_leaf_vertices();
        if inner.iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(inner);
        kept.push(m.clone());
        if kept.len() == quota {
            return (kept, false);
        }
    }
    (kept, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::spiders::enumerate_spiders;

    fn hub_family(q: usize) -> Vec<Spider> {
        // (1,1)-spiders of K_{2,q} with leaf vector (0, 1)
        let g = generators::complete_bipartite(2, q);
        enumerate_spiders(&g, &[1, 1]).filter(|s| s.leaf_vector() == [0, 1]).collect()
    }

    #[test]
    fn needs_are_exact_ceilings() {
        assert_eq!(containment_needs(3, 2.0, 2).unwrap(), vec![1, 1, 3]);
        assert_eq!(containment_needs(2, 1.5, 2).unwrap(), vec![1, 1, 2]);
        assert!(containment_needs(2, 0.5, 2).is_err());
    }

    #[test]
    fn empty_stays_empty() {
        let f = refine_family(Vec::new(), &Thresholds::Constant(Some(1)), 2, 2.0).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn lone_spider_dropped_by_condition_one() {
        let t0 = hub_family(1);
        let f = refine_family(t0, &Thresholds::Constant(Some(4)), 1, 1.0).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn disjoint_family_survives() {
        let t0 = hub_family(5);
        let th = Thresholds::Constant(Some(5));
        let f = refine_family(t0, &th, 1, 1.0).unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(check_conditions(&f, &th), Ok(()));
        let (reps, short) = disjoint_representatives(&f, &[0, 1], 5);
        assert_eq!((reps.len(), short), (5, false));
        let (reps, short) = disjoint_representatives(&f, &[0, 1], 0);
        assert!(reps.is_empty() && !short);
        let (reps, short) = disjoint_representatives(&f, &[0, 1], 9);
        assert_eq!((reps.len(), short), (5, true));
    }

    #[test]
    fn shared_inner_vertex_keeps_one() {
        // centres 3, 4, 5 each reach leaf 0 through vertex 2 and leaf 1 directly
        let mut g = crate::graph::Graph::new(6);
        g.add_edge(2, 0).unwrap();
        for c in 3..6 {
            g.add_edge(c, 2).unwrap();
            g.add_edge(c, 1).unwrap();
        }
        let t0: Vec<Spider> = enumerate_spiders(&g, &[2, 1]).filter(|s| s.leaf_vector() == [0, 1]).collect();
        assert_eq!(t0.len(), 3);
        let f = refine_family(t0, &Thresholds::Constant(Some(1)), 1, 1.0).unwrap();
        let (reps, short) = disjoint_representatives(&f, &[0, 1], 3);
        assert_eq!((reps.len(), short), (1, true));
    }

    #[test]
    fn containing_uses_truncations() {
        let f = refine_family(hub_family(3), &Thresholds::Constant(Some(1)), 1, 1.0).unwrap();
        let centre_only = Spider {
            centre: 2,
            legs: vec![vec![], vec![]],
        };
        assert_eq!(f.containing(&centre_only).count(), 1);
        // two edges shorter than the legs: not a gamma-truncation
        let too_short = centre_only.clone();
        let g = refine_family(
            enumerate_spiders(&generators::path(5), &[2, 2]).collect(),
            &Thresholds::Constant(Some(1)),
            1,
            1.0,
        )
        .unwrap();
        assert_eq!(g.containing(&too_short).count(), 0);
    }
}
