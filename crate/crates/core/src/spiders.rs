//! Spiders: a centre with ordered legs that share only the centre.
//!
//! Legs are stored without the centre, so `legs[i][j]` is the vertex at
//! distance `j + 1` from the centre along leg `i`, and a zero-length leg is an
//! empty vector (generalised spiders).

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

/// Leg lengths `(l_1, ..., l_s)`.
pub type LengthVector = Vec<usize>;

/// Leaf vector `(v_1, ..., v_s)`: the far endpoint of each leg.
pub type LeafVector = Vec<Vertex>;

/// A spider or generalised spider. The derived order (centre, then legs
/// lexicographically) is the canonical order used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spider {
    pub centre: Vertex,
    pub legs: Vec<Vec<Vertex>>,
}

/// Generalised spiders share the representation; legs may be empty.
pub type GeneralisedSpider = Spider;

impl Spider {
    pub fn legs(&self) -> usize {
        self.legs.len()
    }

    pub fn length_vector(&self) -> LengthVector {
        self.legs.iter().map(Vec::len).collect()
    }

    pub fn total_length(&self) -> usize {
        self.legs.iter().map(Vec::len).sum()
    }

    pub fn leaf(&self, i: usize) -> Vertex {
        self.legs[i].last().copied().unwrap_or(self.centre)
    }

    pub fn leaf_vector(&self) -> LeafVector {
        (0..self.legs.len()).map(|i| self.leaf(i)).collect()
    }

    /// Leg `i` as a vertex path starting at the centre.
    pub fn leg_path(&self, i: usize) -> Vec<Vertex> {
        std::iter::once(self.centre)
            .chain(self.legs[i].iter().copied())
            .collect()
    }

    /// All vertices, centre first.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.centre).chain(self.legs.iter().flatten().copied())
    }

    /// Vertices other than the leaves (the centre counts unless some leg has
    /// length zero).
    pub fn non_leaf_vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        if self.legs.iter().all(|l| !l.is_empty()) {
            out.push(self.centre);
        }
        for leg in &self.legs {
            if leg.len() > 1 {
                out.extend_from_slice(&leg[..leg.len() - 1]);
            }
        }
        out
    }

    /// Whether this is a valid (generalised) spider of `g`: legs walk along
    /// edges and share no vertex other than the centre.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.centre >= g.n() {
            return false;
        }
        let mut seen = vec![false; g.n()];
        seen[self.centre] = true;
        for leg in &self.legs {
            let mut prev = self.centre;
            for &v in leg {
                if v >= g.n() || seen[v] || !g.has_edge(prev, v) {
                    return false;
                }
                seen[v] = true;
                prev = v;
            }
        }
        true
    }

    /// Prefix truncation: leg `i` keeps its first `target[i]` edges.
    pub fn subspider(&self, target: &[usize]) -> Result<Spider> {
        if target.len() != self.legs.len() {
            return Err(invalid("target length vector has the wrong number of legs"));
        }
        if target.iter().zip(&self.legs).any(|(&t, leg)| t > leg.len()) {
            return Err(invalid("target exceeds the spider's length vector"));
        }
        Ok(self.truncate(target))
    }

    /// Unchecked [`Spider::subspider`].
    pub(crate) fn truncate(&self, target: &[usize]) -> Spider {
        Spider {
            centre: self.centre,
            legs: self
                .legs
                .iter()
                .zip(target)
                .map(|(leg, &t)| leg[..t].to_vec())
                .collect(),
        }
    }

    /// Whether `other` is a subspider (same centre, every leg a prefix).
    pub fn contains(&self, other: &Spider) -> bool {
        self.centre == other.centre
            && self.legs.len() == other.legs.len()
            && self.legs.iter().zip(&other.legs).all(|(a, b)| a.starts_with(b))
    }
}

/// Calls `visit` on every (generalised) spider of `g` centred at `centre` with
/// length vector `lv`, in canonical order. Zero entries give empty legs.
pub fn visit_spiders_at<F: FnMut(&Spider)>(g: &Graph, lv: &[usize], centre: Vertex, mut visit: F) {
    let mut used = vec![false; g.n()];
    used[centre] = true;
    let mut spider = Spider {
        centre,
        legs: vec![Vec::new(); lv.len()],
    };
    extend_leg(g, lv, 0, centre, &mut used, &mut spider, &mut visit);
}

fn extend_leg<F: FnMut(&Spider)>(
    g: &Graph,
    lv: &[usize],
    leg: usize,
    tip: Vertex,
    used: &mut [bool],
    spider: &mut Spider,
    visit: &mut F,
) {
    if leg == lv.len() {
        visit(spider);
        return;
    }
    if spider.legs[leg].len() == lv[leg] {
        let centre = spider.centre;
        extend_leg(g, lv, leg + 1, centre, used, spider, visit);
        return;
    }
    for &w in g.neighbors(tip) {
        if used[w] {
            continue;
        }
        used[w] = true;
        spider.legs[leg].push(w);
        extend_leg(g, lv, leg, w, used, spider, visit);
        spider.legs[leg].pop();
        used[w] = false;
    }
}

/// Spiders centred at one vertex, canonical order.
pub fn spiders_at(g: &Graph, lv: &[usize], centre: Vertex) -> Vec<Spider> {
    let mut out = Vec::new();
    visit_spiders_at(g, lv, centre, |s| out.push(s.clone()));
    out
}

/// Every spider with length vector `lv`, centre ascending then legs
/// lexicographic. Only one centre's spiders are held in memory at a time.
pub fn enumerate_spiders<'a>(g: &'a Graph, lv: &'a [usize]) -> impl Iterator<Item = Spider> + 'a {
    (0..g.n()).flat_map(move |u| spiders_at(g, lv, u))
}

/// Multiplicity of each leaf vector in a stream of spiders.
pub fn count_by_leaf<I: IntoIterator<Item = Spider>>(spiders: I) -> BTreeMap<LeafVector, u64> {
    let mut counts = BTreeMap::new();
    for s in spiders {
        *counts.entry(s.leaf_vector()).or_insert(0) += 1;
    }
    counts
}

/// Spider count without materializing spiders.
pub fn count_spiders(g: &Graph, lv: &[usize]) -> u64 {
    use rayon::prelude::*;
    (0..g.n())
        .into_par_iter()
        .map(|u| {
            let mut c = 0u64;
            visit_spiders_at(g, lv, u, |_| c += 1);
            c
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn star_and_k4_counts() {
        let star = generators::star(3);
        assert_eq!(enumerate_spiders(&star, &[1, 1]).count(), 6);
        let k4 = generators::complete(4);
        assert_eq!(enumerate_spiders(&k4, &[1, 1]).count(), 24);
        let tri = generators::complete(3);
        assert_eq!(enumerate_spiders(&tri, &[2, 2]).count(), 0);
    }

    #[test]
    fn canonical_order() {
        let k4 = generators::complete(4);
        let all: Vec<_> = enumerate_spiders(&k4, &[1, 2]).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
    }

    #[test]
    fn subspider_cases() {
        let s = Spider {
            centre: 0,
            legs: vec![vec![1, 2], vec![3]],
        };
        assert_eq!(s.subspider(&[2, 1]).unwrap(), s);
        let z = s.subspider(&[0, 0]).unwrap();
        assert_eq!(z.leaf_vector(), vec![0, 0]);
        assert_eq!(
            s.subspider(&[1, 1]).unwrap(),
            Spider {
                centre: 0,
                legs: vec![vec![1], vec![3]]
            }
        );
        assert!(s.subspider(&[3, 1]).is_err());
        assert!(s.subspider(&[1]).is_err());
        assert!(s.contains(&z));
    }

    #[test]
    fn k4_leaf_counts() {
        let k4 = generators::complete(4);
        let counts = count_by_leaf(enumerate_spiders(&k4, &[1, 1]));
        assert_eq!(counts.len(), 12);
        assert!(counts.values().all(|&c| c == 2));
        assert!(count_by_leaf(Vec::new()).is_empty());
    }

    #[test]
    fn non_leaf_vertices() {
        let s = Spider {
            centre: 0,
            legs: vec![vec![1, 2], vec![3]],
        };
        assert_eq!(s.non_leaf_vertices(), vec![0, 1]);
        let g = Spider {
            centre: 0,
            legs: vec![vec![1, 2], vec![]],
        };
        assert_eq!(g.non_leaf_vertices(), vec![1]);
    }
}
