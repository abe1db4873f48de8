//! Canonical codes for small graphs and isomorphism testing.
//!
//! The code of a graph on `n <= 11` vertices packs the upper triangle of its
//! adjacency matrix column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! earliest pair most significant. The canonical code is the minimum over
//! the vertex orders that respect an equitable colour refinement, found by
//! branch and bound.

use std::collections::BTreeMap;

use super::embed::{self, Limits, Search};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest order with a 64-bit code.
pub const MAX_CANON_N: usize = 11;

fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Stable colour refinement; colours are ranks of sorted signatures, so the
/// final colouring is isomorphism invariant.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = {
            let mut m: BTreeMap<&(usize, Vec<usize>), usize> = sigs.iter().map(|s| (s, 0)).collect();
            for (i, r) in m.values_mut().enumerate() {
                *r = i;
            }
            m
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    total: u32,
    /// `cell_of[pos]`: colour that the vertex at position `pos` must have.
    cell_of: Vec<usize>,
    colour: Vec<usize>,
    perm: Vec<Vertex>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl Canon<'_> {
    /// `code` holds the bits of the first `pos` vertices; `tight` says its
    /// prefix equals the best code's prefix so far.
    fn rec(&mut self, pos: usize, code: u64, tight: bool) {
        if pos == self.n {
            if self.best.is_none_or(|b| code < b) {
                self.best = Some(code);
            }
            return;
        }
        let want = self.cell_of[pos];
        let base = pairs(pos);
        for v in 0..self.n {
            if self.used[v] || self.colour[v] != want {
                continue;
            }
            let mut c = code;
            for (i, &u) in self.perm.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    c |= 1u64 << (self.total - 1 - (base + i as u32));
                }
            }
            let known = pairs(pos + 1);
            let mut still_tight = false;
            if let (true, Some(b)) = (tight, self.best) {
                let shift = self.total - known;
                let (pc, pb) = (c >> shift, b >> shift);
                if pc > pb {
                    continue;
                }
                still_tight = pc == pb;
            }
            self.used[v] = true;
            self.perm.push(v);
            self.rec(pos + 1, c, still_tight || self.best.is_none());
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical code; equal codes on equal `n` iff the graphs are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(Error::TooLarge(format!(
            "canonical codes need n <= {MAX_CANON_N}, got {n}"
        )));
    }
    if n < 2 {
        return Ok(0);
    }
    let colour = refine(g);
    let mut cell_of = colour.clone();
    cell_of.sort_unstable();
    let mut c = Canon {
        g,
        n,
        total: pairs(n),
        cell_of,
        colour,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    c.rec(0, 0, true);
    Ok(c.best.expect("some order exists"))
}

/// Inverse of the code packing.
pub fn from_code(n: usize, code: u64) -> Graph {
    let total = pairs(n);
    let mut g = Graph::new(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - idx) & 1 == 1 {
                g.add_edge(i, j).expect("fresh edge");
            }
            idx += 1;
        }
    }
    g
}

/// Isomorphism test by search for a bijective embedding (a bijection that
/// preserves all `m` edges of `g` and lands on a graph with `m` edges is an
/// isomorphism).
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let degs = |x: &Graph| {
        let mut d: Vec<usize> = (0..x.n()).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degs(g) != degs(h) {
        return false;
    }
    matches!(embed::find(g, h, &[], Limits::NONE), Search::Found(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn relabelling_preserves_code() {
        let g = generators::random_gnm(9, 14, 3).unwrap();
        let perm = [4, 2, 8, 0, 1, 7, 3, 6, 5];
        let h = g.relabel(&perm);
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        assert!(isomorphic(&g, &h));
        let c = canonical_code(&g).unwrap();
        assert_eq!(canonical_code(&from_code(9, c)).unwrap(), c);
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c6 = generators::cycle(6).unwrap();
        let two_triangles = generators::complete(3).disjoint_union(&generators::complete(3));
        assert_ne!(canonical_code(&c6).unwrap(), canonical_code(&two_triangles).unwrap());
        assert!(!isomorphic(&c6, &two_triangles));
        assert!(canonical_code(&Graph::new(12)).is_err());
    }

    #[test]
    fn counts_four_vertex_graphs() {
        // 11 isomorphism classes on 4 vertices
        let mut codes = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let all = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
            let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            codes.insert(canonical_code(&Graph::from_edges(4, edges).unwrap()).unwrap());
        }
        assert_eq!(codes.len(), 11);
    }
}
