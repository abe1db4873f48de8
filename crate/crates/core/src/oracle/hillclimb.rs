//! Randomized maximal pattern-free graphs.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::embed::{self, Limits, Search};
use crate::error::Result;
use crate::generators;
use crate::graph::{Graph, Vertex};
use crate::pattern::PatternDescriptor;

/// Automorphisms visited when computing arc orbits. Stopping early only
/// leaves more representatives, never fewer.
const AUTOMORPHISM_CAP: usize = 20_000;

/// Containment test restricted to copies through one host edge.
///
/// Every copy that uses the host edge `uv` maps some pattern arc `(a, b)` to
/// `(u, v)`, and up to automorphism `(a, b)` is one of `arcs`, so anchoring
/// each representative in turn is exhaustive.
#[derive(Clone, Debug)]
pub struct EdgeProbe {
    p: Graph,
    arcs: Vec<(usize, usize)>,
}

impl EdgeProbe {
    pub fn new(desc: &PatternDescriptor) -> Result<Self> {
        desc.validate()?;
        let p = desc.to_pattern().instantiate();
        let arcs: Vec<(usize, usize)> = p.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
        let index: HashMap<(usize, usize), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut parent: Vec<usize> = (0..arcs.len()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut seen = 0;
        embed::for_each(&p, &p, &[], Limits::NONE, &mut |sigma| {
            for (i, &(a, b)) in arcs.iter().enumerate() {
                let j = index[&(sigma[a], sigma[b])];
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
            seen += 1;
            seen >= AUTOMORPHISM_CAP
        });
        let reps = (0..arcs.len())
            .filter(|&i| root(&mut parent, i) == i)
            .map(|i| arcs[i])
            .collect();
        Ok(EdgeProbe { p, arcs: reps })
    }

    /// Anchored arcs after symmetry reduction.
    pub fn representatives(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn pattern_graph(&self) -> &Graph {
        &self.p
    }

    /// Whether `g` has a copy of the pattern using the edge `uv`, which must
    /// be present.
    pub fn through(&self, g: &Graph, u: Vertex, v: Vertex) -> bool {
        debug_assert!(g.has_edge(u, v));
        self.arcs
            .iter()
            .any(|&(a, b)| matches!(embed::find(&self.p, g, &[(a, u), (b, v)], Limits::NONE), Search::Found(_)))
    }
}

/// Exhaustive freeness check, one anchored search per edge.
pub fn is_pattern_free(g: &Graph, desc: &PatternDescriptor) -> Result<bool> {
    let probe = EdgeProbe::new(desc)?;
    if probe.p.n() > g.n() {
        return Ok(true);
    }
    let edges: Vec<_> = g.edges().collect();
    Ok(!edges.par_iter().any(|&(u, v)| probe.through(g, u, v)))
}

/// Whether adding any missing edge creates a copy of the pattern.
pub fn is_edge_maximal(g: &Graph, desc: &PatternDescriptor) -> Result<bool> {
    let probe = EdgeProbe::new(desc)?;
    let n = g.n();
    let missing: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    Ok(missing.par_iter().all(|&(u, v)| {
        let mut h = g.clone();
        h.add_edge(u, v).expect("missing edge");
        probe.through(&h, u, v)
    }))
}

fn one_pass(n: usize, probe: &EdgeProbe, seed: u64, restart: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        g.add_edge(u, v).expect("fresh pair");
        if probe.through(&g, u, v) {
            g.remove_edge(u, v);
        }
    }
    g
}

/// Best of `iterations` random greedy passes (at least one). Each pass tries
/// every vertex pair once in a shuffled order and keeps an edge when no copy
/// of the pattern goes through it. A pair rejected once stays rejected, so
/// every pass ends edge-maximal. Ties go to the earliest pass.
pub fn hill_climb_free(n: usize, desc: &PatternDescriptor, iterations: usize, seed: u64) -> Result<Graph> {
    let probe = EdgeProbe::new(desc)?;
    if probe.p.n() > n {
        return Ok(generators::complete(n));
    }
    let passes: Vec<Graph> = (0..iterations.max(1) as u64)
        .into_par_iter()
        .map(|r| one_pass(n, &probe, seed, r))
        .collect();
    let best = passes
        .into_iter()
        .enumerate()
        .max_by_key(|(i, g)| (g.m(), std::cmp::Reverse(*i)))
        .map(|(_, g)| g)
        .unwrap();
    Ok(best)
}

/// Adds every missing pair, in a seeded shuffled order, that closes no copy
/// of the pattern. The result is pattern-free and edge-maximal whenever `g`
/// is pattern-free.
pub fn extend_to_maximal(g: &Graph, probe: &EdgeProbe, seed: u64) -> Graph {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    pairs.shuffle(&mut rng);
    let mut h = g.clone();
    for (u, v) in pairs {
        h.add_edge(u, v).expect("fresh pair");
        if probe.through(&h, u, v) {
            h.remove_edge(u, v);
        }
    }
    h
}

/// Deletion method: a seeded `G(n, m)` with `m` edges, minus every edge that
/// still lies on a copy of the pattern when visited (in random order), then
/// completed greedily to an edge-maximal graph. Best of `iterations` runs.
pub fn random_threshold_free(
    n: usize,
    m: usize,
    desc: &PatternDescriptor,
    iterations: usize,
    seed: u64,
) -> Result<Graph> {
    let probe = EdgeProbe::new(desc)?;
    if probe.p.n() > n {
        return Ok(generators::complete(n));
    }
    let m = m.min(n * (n - 1) / 2);
    let runs: Vec<Graph> = (0..iterations.max(1) as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r);
            let sub = rng.gen::<u64>();
            let mut g = generators::random_gnm(n, m, sub).expect("m within range");
            let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
            edges.shuffle(&mut rng);
            // deleting edges never creates copies, so one sweep suffices
            for (u, v) in edges {
                if probe.through(&g, u, v) {
                    g.remove_edge(u, v);
                }
            }
            extend_to_maximal(&g, &probe, rng.gen())
        })
        .collect();
    Ok(runs
        .into_iter()
        .enumerate()
        .max_by_key(|(i, g)| (g.m(), std::cmp::Reverse(*i)))
        .map(|(_, g)| g)
        .unwrap())
}
