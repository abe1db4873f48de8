//! Admissible / good classification of paths and spiders.
//!
//! Levels are processed bottom-up. A level's pass enumerates every object,
//! decides admissibility from the already finished lower levels and counts
//! admissible objects per key (unordered endpoint pair for paths, ordered
//! leaf vector for spiders). An object is good iff it is admissible and the
//! count at its key is within the threshold, so goodness needs no second
//! enumeration: it is read off the counts on demand.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::spiders::{visit_spiders_at, LeafVector, LengthVector, Spider};
use crate::threshold::{within, Cap, Thresholds};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Status {
    pub admissible: bool,
    pub good: bool,
}

/// Per-level totals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub objects: u64,
    pub admissible: u64,
    pub good: u64,
}

impl LevelStats {
    pub fn admissible_not_good(&self) -> u64 {
        self.admissible - self.good
    }

    fn from_counts<K>(objects: u64, counts: &HashMap<K, u64>, cap: Cap) -> Self {
        let admissible = counts.values().sum();
        let good = counts.values().filter(|&&c| within(cap, c)).sum();
        LevelStats {
            objects,
            admissible,
            good,
        }
    }
}

type PairCounts = HashMap<(Vertex, Vertex), u64>;
type LeafCounts = HashMap<LeafVector, u64>;

#[derive(Clone, Debug)]
struct SpiderLevel {
    counts: LeafCounts,
    stats: LevelStats,
}

/// Classification tables for paths of length `1..=k` and for the spider
/// length vectors classified so far (always a downward-closed set).
#[derive(Clone, Debug)]
pub struct GoodnessTables {
    thresholds: Thresholds,
    k: usize,
    /// `path_counts[l]`: admissible paths of length `l` per endpoint pair.
    path_counts: Vec<PairCounts>,
    path_stats: Vec<LevelStats>,
    spiders: BTreeMap<LengthVector, SpiderLevel>,
}

fn pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

/// Every simple path of length `len` starting at `start` and ending at a
/// larger vertex, so each undirected path is visited once.
fn visit_paths_from<F: FnMut(&[Vertex])>(g: &Graph, start: Vertex, len: usize, mut f: F) {
    fn rec<F: FnMut(&[Vertex])>(g: &Graph, len: usize, path: &mut Vec<Vertex>, on: &mut [bool], f: &mut F) {
        let tip = *path.last().unwrap();
        if path.len() == len + 1 {
            if tip > path[0] {
                f(path);
            }
            return;
        }
        for &w in g.neighbors(tip) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                rec(g, len, path, on, f);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[start] = true;
    let mut path = vec![start];
    rec(g, len, &mut path, &mut on, &mut f);
}

/// Every simple path of length `len`, once per undirected path, oriented
/// from the smaller endpoint.
pub fn visit_paths<F: FnMut(&[Vertex])>(g: &Graph, len: usize, mut f: F) {
    for s in 0..g.n() {
        visit_paths_from(g, s, len, &mut f);
    }
}

impl GoodnessTables {
    /// Classifies every path of length `1..=k`.
    pub fn classify_paths(g: &Graph, k: usize, thresholds: Thresholds) -> Result<Self> {
        if k == 0 {
            return Err(crate::error::invalid("k must be >= 1"));
        }
        if thresholds.max_len() < k {
            return Err(Error::Precondition(format!(
                "thresholds cover lengths up to {}, need {k}",
                thresholds.max_len()
            )));
        }
        let mut t = GoodnessTables {
            thresholds,
            k,
            path_counts: vec![PairCounts::new(); k + 1],
            path_stats: vec![LevelStats::default(); k + 1],
            spiders: BTreeMap::new(),
        };
        for len in 1..=k {
            let (objects, counts) = (0..g.n())
                .into_par_iter()
                .map(|s| {
                    let mut objects = 0u64;
                    let mut counts = PairCounts::new();
                    visit_paths_from(g, s, len, |p| {
                        objects += 1;
                        if t.path_admissible(p) {
                            *counts.entry(pair(p[0], p[len])).or_insert(0) += 1;
                        }
                    });
                    (objects, counts)
                })
                .reduce(|| (0, PairCounts::new()), merge_counts);
            // single edges are good whatever the threshold
            let cap = if len == 1 { None } else { t.thresholds.cap(len)? };
            t.path_stats[len] = LevelStats::from_counts(objects, &counts, cap);
            t.path_counts[len] = counts;
        }
        Ok(t)
    }

    pub fn thresholds(&self) -> &Thresholds {
        &self.thresholds
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn cap(&self, len: usize) -> Cap {
        self.thresholds.cap(len).expect("threshold coverage checked at construction")
    }

    /// Admissible paths of length `len` between `a` and `b`.
    pub fn path_count(&self, len: usize, a: Vertex, b: Vertex) -> u64 {
        self.path_counts
            .get(len)
            .and_then(|c| c.get(&pair(a, b)))
            .copied()
            .unwrap_or(0)
    }

    pub fn path_stats(&self, len: usize) -> Option<LevelStats> {
        (1..=self.k).contains(&len).then(|| self.path_stats[len])
    }

    /// Goodness of every contiguous subpath `p[i..=i+l]` with `l < len`,
    /// as `good[l][i]`.
    fn subpath_goodness(&self, p: &[Vertex]) -> Vec<Vec<bool>> {
        let len = p.len() - 1;
        let mut good = vec![vec![false; len + 1]; len + 1];
        good[1][..len].fill(true);
        for l in 2..len {
            let cap = self.cap(l);
            for i in 0..=len - l {
                // All strict subpaths of p[i..=i+l] lie inside one of its two
                // maximal ones, and a good path has only good subpaths.
                let adm = good[l - 1][i] && good[l - 1][i + 1];
                good[l][i] = adm && within(cap, self.path_count(l, p[i], p[i + l]));
            }
        }
        good
    }

    fn path_admissible(&self, p: &[Vertex]) -> bool {
        let len = p.len() - 1;
        if len <= 1 {
            return true;
        }
        let good = self.subpath_goodness(p);
        good[len - 1][0] && good[len - 1][1]
    }

    /// Status of a path given as a vertex sequence of length `1..=k`.
    pub fn path_status(&self, p: &[Vertex]) -> Status {
        let len = p.len() - 1;
        assert!((1..=self.k).contains(&len), "path length {len} outside 1..={}", self.k);
        let admissible = self.path_admissible(p);
        let good = admissible
            && (len == 1 || within(self.cap(len), self.path_count(len, p[0], p[len])));
        Status { admissible, good }
    }

    /// Classifies spiders with every length vector `1 <= w <= lv`
    /// (entrywise), smallest total length first.
    pub fn classify_spiders(&mut self, g: &Graph, lv: &[usize]) -> Result<()> {
        if lv.is_empty() || lv.contains(&0) {
            return Err(crate::error::invalid("spider length vector entries must be >= 1"));
        }
        if lv.iter().any(|&l| l > self.k) {
            return Err(Error::Precondition(format!(
                "path tables cover lengths up to {}, spider legs need {}",
                self.k,
                lv.iter().max().unwrap()
            )));
        }
        let total: usize = lv.iter().sum();
        if self.thresholds.max_len() < total {
            return Err(Error::Precondition(format!(
                "thresholds cover lengths up to {}, need {total}",
                self.thresholds.max_len()
            )));
        }
        for w in below(lv) {
            if self.spiders.contains_key(&w) {
                continue;
            }
            let (objects, counts) = (0..g.n())
                .into_par_iter()
                .map(|u| {
                    let mut objects = 0u64;
                    let mut counts = LeafCounts::new();
                    visit_spiders_at(g, &w, u, |s| {
                        objects += 1;
                        if self.spider_admissible(s) {
                            *counts.entry(s.leaf_vector()).or_insert(0) += 1;
                        }
                    });
                    (objects, counts)
                })
                .reduce(|| (0, LeafCounts::new()), merge_counts);
            let cap = self.cap(w.iter().sum());
            let stats = LevelStats::from_counts(objects, &counts, cap);
            self.spiders.insert(w, SpiderLevel { counts, stats });
        }
        Ok(())
    }

    /// Admissible spiders with length vector `lv` and the given leaf vector.
    pub fn spider_count(&self, lv: &[usize], leaf: &[Vertex]) -> u64 {
        self.spiders
            .get(lv)
            .and_then(|l| l.counts.get(leaf))
            .copied()
            .unwrap_or(0)
    }

    pub fn spider_stats(&self, lv: &[usize]) -> Option<LevelStats> {
        self.spiders.get(lv).map(|l| l.stats)
    }

    /// Classified length vectors in increasing order.
    pub fn spider_levels(&self) -> impl Iterator<Item = &LengthVector> {
        self.spiders.keys()
    }

    /// Leaf-vector counts of one classified level.
    pub fn spider_counts(&self, lv: &[usize]) -> Option<&HashMap<LeafVector, u64>> {
        self.spiders.get(lv).map(|l| &l.counts)
    }

    fn spider_admissible(&self, s: &Spider) -> bool {
        let lv = s.length_vector();
        let mut memo = Memo::new(&lv);
        self.admissible_at(s, &mut lv.clone(), &mut memo)
    }

    /// Status of a spider whose length vector has been classified.
    pub fn spider_status(&self, s: &Spider) -> Option<Status> {
        let lv = s.length_vector();
        self.spiders.get(&lv)?;
        let mut memo = Memo::new(&lv);
        let mut w = lv.clone();
        let admissible = self.admissible_at(s, &mut w, &mut memo);
        let good = admissible && self.within_at(s, &lv);
        Some(Status { admissible, good })
    }

    fn within_at(&self, s: &Spider, w: &[usize]) -> bool {
        let leaf: Vec<Vertex> = s
            .legs
            .iter()
            .zip(w)
            .map(|(leg, &l)| leg[l - 1])
            .collect();
        within(self.cap(w.iter().sum()), self.spider_count(w, &leaf))
    }

    /// Admissibility of the truncation of `s` to `w`.
    fn admissible_at(&self, s: &Spider, w: &mut [usize], memo: &mut Memo) -> bool {
        if w.iter().all(|&l| l == 1) {
            return true;
        }
        for i in 0..w.len() {
            let full = w[i];
            for j in 1..full {
                w[i] = j;
                let ok = self.good_at(s, w, memo);
                w[i] = full;
                if !ok {
                    return false;
                }
            }
        }
        (0..w.len()).all(|i| {
            let leg = &s.leg_path(i)[..=w[i]];
            self.path_status(leg).good
        })
    }

    fn good_at(&self, s: &Spider, w: &mut [usize], memo: &mut Memo) -> bool {
        let idx = memo.index(w);
        if let Some(v) = memo.good[idx] {
            return v;
        }
        let v = self.admissible_at(s, w, memo) && self.within_at(s, w);
        memo.good[idx] = Some(v);
        v
    }

    /// The admissible-but-not-good spiders with length vector `lv`, in
    /// canonical order.
    pub fn admissible_not_good(&self, g: &Graph, lv: &[usize]) -> Result<Vec<Spider>> {
        let level = self.spiders.get(lv).ok_or_else(|| {
            Error::Precondition(format!("length vector {lv:?} has not been classified"))
        })?;
        let cap = self.cap(lv.iter().sum());
        if level.counts.values().all(|&c| within(cap, c)) {
            return Ok(Vec::new());
        }
        let per_centre: Vec<Vec<Spider>> = (0..g.n())
            .into_par_iter()
            .map(|u| {
                let mut out = Vec::new();
                visit_spiders_at(g, lv, u, |s| {
                    let c = level.counts.get(&s.leaf_vector()).copied().unwrap_or(0);
                    if !within(cap, c) && self.spider_admissible(s) {
                        out.push(s.clone());
                    }
                });
                out
            })
            .collect();
        Ok(per_centre.into_iter().flatten().collect())
    }

    /// `#(admissible, not good spiders with lv) / (n * delta^l)`, infinite
    /// when the minimum degree is zero.
    pub fn not_good_ratio(&self, g: &Graph, lv: &[usize]) -> Result<f64> {
        let stats = self.spider_stats(lv).ok_or_else(|| {
            Error::Precondition(format!("length vector {lv:?} has not been classified"))
        })?;
        let delta = g.min_degree();
        if delta == 0 {
            return Ok(f64::INFINITY);
        }
        let l: usize = lv.iter().sum();
        let denom = g.n() as f64 * (delta as f64).powi(l as i32);
        Ok(stats.admissible_not_good() as f64 / denom)
    }
}

/// All `w` with `1 <= w_i <= lv_i`, by total length then lexicographically.
pub fn below(lv: &[usize]) -> Vec<LengthVector> {
    let mut out: Vec<LengthVector> = vec![Vec::new()];
    for &l in lv {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=l).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.sort_by_key(|w| (w.iter().sum::<usize>(), w.clone()));
    out
}

fn merge_counts<K: std::hash::Hash + Eq>(
    (oa, mut a): (u64, HashMap<K, u64>),
    (ob, b): (u64, HashMap<K, u64>),
) -> (u64, HashMap<K, u64>) {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    (oa + ob, a)
}

/// Goodness memo over the truncation vectors of one spider.
struct Memo {
    radix: Vec<usize>,
    good: Vec<Option<bool>>,
}

impl Memo {
    fn new(lv: &[usize]) -> Self {
        let size = lv.iter().product();
        Memo {
            radix: lv.to_vec(),
            good: vec![None; size],
        }
    }

    fn index(&self, w: &[usize]) -> usize {
        w.iter()
            .zip(&self.radix)
            .fold(0, |acc, (&x, &r)| acc * r + (x - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::pattern::kst_subdivision;
    use crate::spiders::enumerate_spiders;

    fn constant(n: u64) -> Thresholds {
        Thresholds::Constant(Some(n))
    }

    #[test]
    fn length_one_always_good() {
        let g = generators::petersen();
        let t = GoodnessTables::classify_paths(&g, 2, constant(0)).unwrap();
        let s = t.path_stats(1).unwrap();
        assert_eq!(s, LevelStats { objects: 15, admissible: 15, good: 15 });
        let s2 = t.path_stats(2).unwrap();
        assert_eq!(s2.good, 0);
        assert_eq!(s2.admissible, 30);
    }

    #[test]
    fn k2q_paths() {
        for q in 2..6u64 {
            let g = generators::complete_bipartite(2, q as usize);
            for n in [1, q - 1, q, q + 3] {
                let t = GoodnessTables::classify_paths(&g, 2, constant(n)).unwrap();
                assert_eq!(t.path_count(2, 0, 1), q);
                let st = t.path_status(&[0, 2, 1]);
                assert!(st.admissible);
                assert_eq!(st.good, q <= n);
            }
        }
    }

    #[test]
    fn path_graph_all_good() {
        let g = generators::path(5);
        let t = GoodnessTables::classify_paths(&g, 4, constant(1)).unwrap();
        for l in 1..=4 {
            let s = t.path_stats(l).unwrap();
            assert_eq!(s.objects, (5 - l) as u64);
            assert_eq!(s.good, s.objects);
        }
    }

    #[test]
    fn k2q_spiders_and_ratio() {
        let q = 4;
        let g = generators::complete_bipartite(2, q);
        let mut t = GoodnessTables::classify_paths(&g, 1, constant(1)).unwrap();
        t.classify_spiders(&g, &[1, 1]).unwrap();
        assert_eq!(t.spider_count(&[1, 1], &[0, 1]), q as u64);
        let bad = t.admissible_not_good(&g, &[1, 1]).unwrap();
        // hubs share q centres, right-side pairs share both hubs: nothing is good
        assert_eq!(bad.len(), 2 * q + 2 * q * (q - 1));
        let stats = t.spider_stats(&[1, 1]).unwrap();
        assert_eq!(stats.admissible, bad.len() as u64);
        assert_eq!(stats.good, 0);
        let r = t.not_good_ratio(&g, &[1, 1]).unwrap();
        let expected = 32.0 / (6.0 * 4.0);
        assert_eq!(r, expected);
    }

    #[test]
    fn spider_pair_equals_two_path() {
        let g = generators::random_gnm(12, 30, 5).unwrap();
        let mut t = GoodnessTables::classify_paths(&g, 2, constant(2)).unwrap();
        t.classify_spiders(&g, &[1, 1]).unwrap();
        for s in enumerate_spiders(&g, &[1, 1]) {
            let (a, b) = (s.leaf(0), s.leaf(1));
            assert_eq!(t.spider_count(&[1, 1], &[a, b]), t.path_count(2, a, b));
            let path = [a, s.centre, b];
            assert_eq!(t.spider_status(&s).unwrap(), t.path_status(&path));
        }
    }

    #[test]
    fn good_implies_admissible_on_c8() {
        let g = kst_subdivision(2, 2, 2).unwrap();
        let mut t = GoodnessTables::classify_paths(&g, 2, constant(1)).unwrap();
        assert_eq!(t.path_stats(2).unwrap(), LevelStats { objects: 8, admissible: 8, good: 8 });
        t.classify_spiders(&g, &[2, 2]).unwrap();
        for lv in below(&[2, 2]) {
            for s in enumerate_spiders(&g, &lv) {
                let st = t.spider_status(&s).unwrap();
                assert!(!st.good || st.admissible);
            }
        }
    }

    #[test]
    fn missing_tables_rejected() {
        let g = generators::complete(4);
        let mut t = GoodnessTables::classify_paths(&g, 1, constant(1)).unwrap();
        assert!(matches!(t.classify_spiders(&g, &[2, 1]), Err(Error::Precondition(_))));
        assert!(t.not_good_ratio(&g, &[1, 1]).is_err());
        let paper = Thresholds::paper(2.0, 2).unwrap();
        let mut t = GoodnessTables::classify_paths(&g, 2, paper).unwrap();
        assert!(matches!(t.classify_spiders(&g, &[2, 1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn below_order() {
        assert_eq!(
            below(&[2, 2]),
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        assert_eq!(below(&[1, 3]).len(), 3);
    }

    #[test]
    fn empty_levels() {
        let g = generators::path(3);
        let mut t = GoodnessTables::classify_paths(&g, 2, constant(1)).unwrap();
        t.classify_spiders(&g, &[2, 2]).unwrap();
        assert_eq!(t.spider_stats(&[2, 2]).unwrap(), LevelStats::default());
        assert!(t.spider_counts(&[2, 2]).unwrap().is_empty());
    }
}
