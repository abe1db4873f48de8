//! Deterministic graph generators.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// `K_{s,t}`: vertices `0..s` on the left, `s..s+t` on the right.
pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    let mut g = Graph::new(s + t);
    for i in 0..s {
        for j in 0..t {
            g.add_edge(i, s + j).unwrap();
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Cycle `0-1-...-(len-1)-0`. Requires `len >= 3`.
pub fn cycle(len: usize) -> Result<Graph> {
    if len < 3 {
        return Err(invalid(format!("cycle length {len} < 3")));
    }
    Graph::from_edges(len, (0..len).map(|i| (i, (i + 1) % len)))
}

/// Path on `n` vertices `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star `K_{1,leaves}` with hub 0.
pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, i + 5).unwrap();
        g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
    }
    g
}

/// Uniform `G(n, m)`: `m` distinct pairs drawn without replacement.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(invalid(format!("m = {m} exceeds n(n-1)/2 = {pairs}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = index::sample(&mut rng, pairs, m).into_vec();
    chosen.sort_unstable();
    let mut g = Graph::new(n);
    for idx in chosen {
        let (u, v) = unrank_pair(n, idx);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Inverse of the row-major enumeration of pairs `u < v`.
fn unrank_pair(n: usize, mut idx: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}
