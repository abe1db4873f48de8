//! Independent brute-force recomputations shared by the integration tests.
//! Nothing here calls the library's search or counting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use kstk::finder::SpiderFamily;
use kstk::{Graph, Spider};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, p)` from a seeded generator.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Every simple path with `len` edges, once per undirected path, written
/// from its smaller endpoint.
pub fn paths(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let a = adj(g);
    let n = g.n();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while let Some(p) = stack.pop() {
        if p.len() == len + 1 {
            if p[0] < p[len] {
                out.push(p);
            }
            continue;
        }
        let tip = *p.last().unwrap();
        for (w, _) in a[tip].iter().enumerate().filter(|&(w, &e)| e && !p.contains(&w)) {
            let mut q = p.clone();
            q.push(w);
            stack.push(q);
        }
    }
    out.sort();
    out
}

fn oriented(p: &[usize]) -> Vec<usize> {
    if p[0] < p[p.len() - 1] {
        p.to_vec()
    } else {
        p.iter().rev().copied().collect()
    }
}

/// Spiders with length vector `lv`: centre, then ordered legs excluding the
/// centre, legs pairwise disjoint.
pub fn spiders(g: &Graph, lv: &[usize]) -> Vec<Spider> {
    let a = adj(g);
    let n = g.n();
    // walks of length l from u, as vertex lists without u
    let legs_from = |u: usize, l: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![u]];
        while let Some(p) = stack.pop() {
            if p.len() == l + 1 {
                out.push(p[1..].to_vec());
                continue;
            }
            let tip = *p.last().unwrap();
            for (w, _) in a[tip].iter().enumerate().filter(|&(w, &e)| e && !p.contains(&w)) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
        out
    };
    let mut out = Vec::new();
    for u in 0..n {
        let options: Vec<Vec<Vec<usize>>> = lv.iter().map(|&l| legs_from(u, l)).collect();
        let mut pick: Vec<Vec<usize>> = Vec::new();
        fn rec(i: usize, options: &[Vec<Vec<usize>>], pick: &mut Vec<Vec<usize>>, u: usize, out: &mut Vec<Spider>) {
            if i == options.len() {
                out.push(Spider {
                    centre: u,
                    legs: pick.clone(),
                });
                return;
            }
            for leg in &options[i] {
                if pick.iter().all(|p| p.iter().all(|v| !leg.contains(v))) {
                    pick.push(leg.clone());
                    rec(i + 1, options, pick, u, out);
                    pick.pop();
                }
            }
        }
        rec(0, &options, &mut pick, u, &mut out);
    }
    out.sort();
    out
}

/// Goodness by the recursive definition, one memo table per level.
pub struct Brute<'a> {
    g: &'a Graph,
    cap: Box<dyn Fn(usize) -> Option<u64> + 'a>,
    path_good: HashMap<Vec<usize>, bool>,
    path_counts: HashMap<usize, HashMap<(usize, usize), u64>>,
    spider_counts: HashMap<Vec<usize>, HashMap<Vec<usize>, u64>>,
}

impl<'a> Brute<'a> {
    /// `cap(l)` is `f(l)`, `None` for unbounded.
    pub fn new(g: &'a Graph, cap: impl Fn(usize) -> Option<u64> + 'a) -> Self {
        Brute {
            g,
            cap: Box::new(cap),
            path_good: HashMap::new(),
            path_counts: HashMap::new(),
            spider_counts: HashMap::new(),
        }
    }

    fn within(&self, len: usize, c: u64) -> bool {
        (self.cap)(len).is_none_or(|f| c <= f)
    }

    pub fn path_admissible(&mut self, p: &[usize]) -> bool {
        let len = p.len() - 1;
        if len == 1 {
            return true;
        }
        for l in 1..len {
            for i in 0..=len - l {
                if !self.path_is_good(&p[i..=i + l]) {
                    return false;
                }
            }
        }
        true
    }

    /// Admissible paths of length `len` per unordered endpoint pair.
    pub fn path_counts(&mut self, len: usize) -> HashMap<(usize, usize), u64> {
        if let Some(c) = self.path_counts.get(&len) {
            return c.clone();
        }
        let mut c = HashMap::new();
        for p in paths(self.g, len) {
            if self.path_admissible(&p) {
                *c.entry((p[0], p[len])).or_insert(0) += 1;
            }
        }
        self.path_counts.insert(len, c.clone());
        c
    }

    pub fn path_is_good(&mut self, p: &[usize]) -> bool {
        let p = oriented(p);
        if let Some(&b) = self.path_good.get(&p) {
            return b;
        }
        let len = p.len() - 1;
        let good = len == 1 || {
            self.path_admissible(&p) && {
                let c = self.path_counts(len).get(&(p[0], p[len])).copied().unwrap_or(0);
                self.within(len, c)
            }
        };
        self.path_good.insert(p, good);
        good
    }

    pub fn spider_admissible(&mut self, s: &Spider) -> bool {
        let lv = s.length_vector();
        for (i, &li) in lv.iter().enumerate() {
            for j in 1..li {
                let mut t = s.clone();
                t.legs[i].truncate(j);
                if !self.spider_is_good(&t) {
                    return false;
                }
            }
            let mut leg = vec![s.centre];
            leg.extend(&s.legs[i]);
            if !self.path_is_good(&leg) {
                return false;
            }
        }
        true
    }

    /// Admissible spiders per leaf vector.
    pub fn spider_counts(&mut self, lv: &[usize]) -> HashMap<Vec<usize>, u64> {
        if let Some(c) = self.spider_counts.get(lv) {
            return c.clone();
        }
        let mut c = HashMap::new();
        for s in spiders(self.g, lv) {
            if self.spider_admissible(&s) {
                *c.entry(s.leaf_vector()).or_insert(0) += 1;
            }
        }
        self.spider_counts.insert(lv.to_vec(), c.clone());
        c
    }

    pub fn spider_is_good(&mut self, s: &Spider) -> bool {
        let lv = s.length_vector();
        self.spider_admissible(s) && {
            let c = self.spider_counts(&lv).get(&s.leaf_vector()).copied().unwrap_or(0);
            self.within(lv.iter().sum(), c)
        }
    }
}

/// Whether `g` has a (not necessarily induced) cycle of length `len`.
pub fn has_cycle(g: &Graph, len: usize) -> bool {
    let a = adj(g);
    let n = g.n();
    fn rec(a: &[Vec<bool>], len: usize, p: &mut Vec<usize>) -> bool {
        let tip = *p.last().unwrap();
        if p.len() == len {
            return a[tip][p[0]];
        }
        for w in p[0] + 1..a.len() {
            if a[tip][w] && !p.contains(&w) {
                p.push(w);
                if rec(a, len, p) {
                    return true;
                }
                p.pop();
            }
        }
        false
    }
    // the smallest vertex of the cycle goes first
    (0..n).any(|s| rec(&a, len, &mut vec![s]))
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// grown edge by edge with canonical-code deduplication.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    use kstk::oracle::{canonical_code, from_code};
    let mut level: HashSet<u64> = HashSet::from([canonical_code(&Graph::new(n)).unwrap()]);
    let mut all: Vec<u64> = level.iter().copied().collect();
    for _ in 0..n * (n.saturating_sub(1)) / 2 {
        let mut next = HashSet::new();
        for &c in &level {
            let g = from_code(n, c);
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v).unwrap();
                        next.insert(canonical_code(&h).unwrap());
                    }
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all.sort_unstable();
    all.into_iter().map(|c| from_code(n, c)).collect()
}

/// Conditions (i) and (ii) of a refined family, rechecked from the member
/// list alone. `cap` is `f(l)` for the family's total length.
pub fn family_conditions(family: &SpiderFamily, cap: Option<u64>, delta: usize, l: f64) -> Result<(), String> {
    let members = family.members();
    let mut by_leaf: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for m in members {
        *by_leaf.entry(m.leaf_vector()).or_insert(0) += 1;
    }
    for m in members {
        let c = by_leaf[&m.leaf_vector()];
        match cap {
            Some(f) if 2 * c >= f => {}
            _ => return Err(format!("condition (i) fails for {m:?}: {c} members vs f = {cap:?}")),
        }
    }
    let truncation = |m: &Spider, mask: u32| {
        let mut t = m.clone();
        for (i, leg) in t.legs.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                leg.pop();
            }
        }
        (mask, t)
    };
    let masks = 1u32 << family.lv().len();
    let mut holders: HashMap<(u32, Spider), u64> = HashMap::new();
    for m in members {
        for mask in 0..masks {
            *holders.entry(truncation(m, mask)).or_insert(0) += 1;
        }
    }
    for m in members {
        for mask in 0..masks {
            let c = holders[&truncation(m, mask)] as f64;
            let need = (delta as f64).powi(mask.count_ones() as i32) / (l * l);
            if c < need - 1e-9 {
                return Err(format!("condition (ii) fails for {m:?} at mask {mask:b}: {c} < {need}"));
            }
        }
    }
    Ok(())
}
