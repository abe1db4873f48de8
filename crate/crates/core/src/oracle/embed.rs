//! Backtracking subgraph monomorphism. Pattern vertices are matched one at a
//! time, each (where possible) next to an already matched neighbour, so the
//! candidates come from a host neighbour list rather than all of `V(G)`.

use std::time::Instant;

use rayon::prelude::*;

use crate::graph::{Graph, Vertex};

const NONE: Vertex = Vertex::MAX;
/// Hosts up to this size get an adjacency bit matrix.
const BITSET_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Limits {
    pub node_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Limits {
    pub const NONE: Limits = Limits {
        node_limit: None,
        deadline: None,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Search {
    Found(Vec<Vertex>),
    Absent,
    Exhausted,
}

struct Adjacency<'a> {
    g: &'a Graph,
    words: usize,
    bits: Vec<u64>,
}

impl<'a> Adjacency<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        if n > BITSET_LIMIT {
            return Adjacency {
                g,
                words: 0,
                bits: Vec::new(),
            };
        }
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Adjacency { g, words, bits }
    }

    #[inline]
    fn has(&self, u: Vertex, v: Vertex) -> bool {
        if self.words == 0 {
            self.g.has_edge(u, v)
        } else {
            self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
        }
    }
}

/// Matching order: fixed vertices first, then repeatedly the unmatched vertex
/// with the most matched neighbours (ties: higher degree, smaller id).
fn plan(p: &Graph, first: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = p.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &u in first {
        if !placed[u] {
            placed[u] = true;
            order.push(u);
        }
    }
    while order.len() < n {
        let u = (0..n)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| (weight_of(p, &placed, u), p.degree(u), std::cmp::Reverse(u)))
            .unwrap();
        placed[u] = true;
        order.push(u);
    }
    let pos: Vec<usize> = {
        let mut pos = vec![0; n];
        for (i, &u) in order.iter().enumerate() {
            pos[u] = i;
        }
        pos
    };
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &u)| p.neighbors(u).iter().copied().filter(|&w| pos[w] < i).collect())
        .collect();
    (order, back)
}

fn weight_of(p: &Graph, placed: &[bool], u: usize) -> usize {
    p.neighbors(u).iter().filter(|&&w| placed[w]).count()
}

struct Matcher<'a> {
    p: &'a Graph,
    g: &'a Graph,
    adj: Adjacency<'a>,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    fixed: Vec<Vertex>,
    limits: Limits,
    nodes: u64,
    exhausted: bool,
}

impl<'a> Matcher<'a> {
    fn new(p: &'a Graph, g: &'a Graph, fixed: &[(usize, Vertex)], limits: Limits) -> Self {
        let first: Vec<usize> = fixed.iter().map(|&(u, _)| u).collect();
        let (order, back) = plan(p, &first);
        let mut fx = vec![NONE; p.n()];
        for &(u, x) in fixed {
            fx[u] = x;
        }
        Matcher {
            p,
            g,
            adj: Adjacency::new(g),
            order,
            back,
            fixed: fx,
            limits,
            nodes: 0,
            exhausted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.limits.node_limit.is_some_and(|l| self.nodes > l) {
            self.exhausted = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    fn feasible(&self, step: usize, x: Vertex, map: &[Vertex], used: &[bool]) -> bool {
        let u = self.order[step];
        !used[x]
            && self.g.degree(x) >= self.p.degree(u)
            && self.back[step].iter().all(|&w| self.adj.has(x, map[w]))
    }

    /// Returns true when the caller should stop (visitor asked to, or the
    /// budget ran out).
    fn rec(
        &mut self,
        step: usize,
        map: &mut [Vertex],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if step == self.order.len() {
            return visit(map);
        }
        let u = self.order[step];
        let candidates: Vec<Vertex> = if self.fixed[u] != NONE {
            vec![self.fixed[u]]
        } else if let Some(&w) = self.back[step].iter().min_by_key(|&&w| self.g.degree(map[w])) {
            self.g.neighbors(map[w]).to_vec()
        } else {
            (0..self.g.n()).collect()
        };
        for x in candidates {
            if self.tick() {
                return true;
            }
            if !self.feasible(step, x, map, used) {
                continue;
            }
            map[u] = x;
            used[x] = true;
            let stop = self.rec(step + 1, map, used, visit);
            used[x] = false;
            map[u] = NONE;
            if stop {
                return true;
            }
        }
        false
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vertex]) -> bool) {
        if self.p.n() > self.g.n() {
            return;
        }
        for (u, &x) in self.fixed.iter().enumerate() {
            if x != NONE && (x >= self.g.n() || self.g.degree(x) < self.p.degree(u)) {
                return;
            }
        }
        let mut map = vec![NONE; self.p.n()];
        let mut used = vec![false; self.g.n()];
        self.rec(0, &mut map, &mut used, visit);
    }
}

/// Visits embeddings of `p` into `g` in search order until `visit` returns
/// true. Returns false if the budget ran out first.
pub(crate) fn for_each(
    p: &Graph,
    g: &Graph,
    fixed: &[(usize, Vertex)],
    limits: Limits,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    let mut m = Matcher::new(p, g, fixed, limits);
    m.run(visit);
    !m.exhausted
}

/// First embedding in search order.
pub(crate) fn find(p: &Graph, g: &Graph, fixed: &[(usize, Vertex)], limits: Limits) -> Search {
    let mut found = None;
    let complete = for_each(p, g, fixed, limits, &mut |map| {
        found = Some(map.to_vec());
        true
    });
    match (found, complete) {
        (Some(m), _) => Search::Found(m),
        (None, true) => Search::Absent,
        (None, false) => Search::Exhausted,
    }
}

/// [`find`] split over the image of the first matched vertex. The answer is
/// the one the sequential search would give; without a node limit (which is
/// inherently sequential) the branches run in parallel.
pub(crate) fn find_par(p: &Graph, g: &Graph, limits: Limits) -> Search {
    if limits.node_limit.is_some() || p.n() == 0 || p.n() > g.n() {
        return find(p, g, &[], limits);
    }
    let (order, _) = plan(p, &[]);
    let root = order[0];
    let hit = (0..g.n()).into_par_iter().find_map_first(|x| {
        match find(p, g, &[(root, x)], limits) {
            Search::Absent => None,
            other => Some(other),
        }
    });
    hit.unwrap_or(Search::Absent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn triangle_in_k4_and_not_in_c6() {
        let tri = generators::complete(3);
        assert!(matches!(find(&tri, &generators::complete(4), &[], Limits::NONE), Search::Found(_)));
        let c6 = generators::cycle(6).unwrap();
        assert_eq!(find(&tri, &c6, &[], Limits::NONE), Search::Absent);
        assert_eq!(find_par(&tri, &c6, Limits::NONE), Search::Absent);
    }

    #[test]
    fn counts_automorphisms() {
        let c5 = generators::cycle(5).unwrap();
        let mut count = 0;
        for_each(&c5, &c5, &[], Limits::NONE, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 10);
    }

    #[test]
    fn node_limit_exhausts() {
        let p = generators::cycle(8).unwrap();
        let g = generators::petersen();
        let limits = Limits {
            node_limit: Some(3),
            deadline: None,
        };
        assert_eq!(find(&p, &g, &[], limits), Search::Exhausted);
    }

    #[test]
    fn fixed_pairs_respected() {
        let p = generators::path(2);
        let g = generators::path(4);
        assert_eq!(find(&p, &g, &[(0, 0), (1, 1)], Limits::NONE), Search::Found(vec![0, 1]));
        assert_eq!(find(&p, &g, &[(0, 0), (1, 2)], Limits::NONE), Search::Absent);
    }
}
