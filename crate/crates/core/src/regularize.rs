//! Dense almost-regular subgraph extraction.
//!
//! The procedure peels low-degree vertices, splits the survivors into dyadic
//! degree bands and keeps the best-scoring band (or pair of adjacent bands)
//! under `e / m^(1+eps)`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq)]
pub struct RegularizeParams {
    pub epsilon: f64,
    pub c: f64,
}

impl RegularizeParams {
    pub fn new(epsilon: f64, c: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(invalid(format!("epsilon {epsilon} not in (0,1)")));
        }
        if c.is_nan() || c < 1.0 {
            return Err(invalid(format!("c {c} < 1")));
        }
        Ok(RegularizeParams { epsilon, c })
    }

    /// The almost-regularity constant `20 * 2^(1/eps^2 + 1)` guaranteed by the
    /// asymptotic bound. Overflows to infinity for small `eps`.
    pub fn theoretical_k(&self) -> f64 {
        20.0 * 2f64.powf(1.0 / (self.epsilon * self.epsilon) + 1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularizeReport {
    pub subgraph: Graph,
    /// `vertices[i]` is the input vertex behind vertex `i` of `subgraph`.
    pub vertices: Vec<Vertex>,
    pub achieved_k: f64,
    pub theoretical_k: f64,
    pub score: f64,
}

impl RegularizeReport {
    pub fn m(&self) -> usize {
        self.subgraph.n()
    }

    pub fn edges(&self) -> usize {
        self.subgraph.m()
    }

    /// `log e / log m - 1`; undefined for `m <= 1` or edgeless output.
    pub fn density_exponent(&self) -> Option<f64> {
        let (m, e) = (self.m() as f64, self.edges() as f64);
        (self.m() > 1 && self.edges() > 0).then(|| e.ln() / m.ln() - 1.0)
    }
}

/// `max d <= K * min d`.
pub fn is_almost_regular(g: &Graph, k: f64) -> bool {
    g.max_degree() as f64 <= k * g.min_degree() as f64
}

/// `max d / min d`, with 1 for edgeless graphs and infinity when some but not
/// all degrees are zero.
pub fn achieved_k(g: &Graph) -> f64 {
    let (lo, hi) = (g.min_degree(), g.max_degree());
    if hi == 0 {
        1.0
    } else if lo == 0 {
        f64::INFINITY
    } else {
        hi as f64 / lo as f64
    }
}

/// Repeatedly drops every vertex whose degree is below half the current
/// average degree. Returns the surviving vertices in ascending order.
pub fn peel(g: &Graph) -> Vec<Vertex> {
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut count = g.n();
    let mut edges2: usize = deg.iter().sum();
    loop {
        if count == 0 {
            break;
        }
        // d < avg/2  <=>  2 * d * count < edges2
        let doomed: Vec<Vertex> = (0..g.n())
            .filter(|&v| alive[v] && 2 * deg[v] * count < edges2)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for &v in &doomed {
            alive[v] = false;
        }
        for &v in &doomed {
            for &w in g.neighbors(v) {
                if alive[w] {
                    deg[w] -= 1;
                    edges2 -= 2;
                } else if w > v && doomed.binary_search(&w).is_ok() {
                    edges2 -= 2;
                }
            }
            count -= 1;
        }
    }
    (0..g.n()).filter(|&v| alive[v]).collect()
}

fn band_of(d: usize) -> usize {
    // band 0 holds isolated vertices, band i+1 holds degrees in [2^i, 2^(i+1))
    if d == 0 {
        0
    } else {
        (usize::BITS - d.leading_zeros()) as usize
    }
}

struct Candidate {
    vertices: Vec<Vertex>,
    graph: Graph,
    score: f64,
    k: f64,
}

fn candidate(g: &Graph, vertices: Vec<Vertex>, eps: f64) -> Candidate {
    let graph = g.induced(&vertices);
    let m = graph.n() as f64;
    let score = graph.m() as f64 / m.powf(1.0 + eps);
    let k = achieved_k(&graph);
    Candidate {
        vertices,
        graph,
        score,
        k,
    }
}

/// Higher score, then more vertices, then lexicographically smaller set.
fn better(a: &Candidate, b: &Candidate) -> Ordering {
    a.score
        .total_cmp(&b.score)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| b.vertices.cmp(&a.vertices))
}

/// Extracts a dense almost-regular induced subgraph.
///
/// Candidates are the input itself, the peeled core, every dyadic degree band
/// of the core and every union of two adjacent bands. Candidates whose
/// max/min degree ratio exceeds the input's are discarded, so the output is
/// never less regular than the input; the rest are ranked by
/// `e / m^(1+eps)`.
pub fn extract_almost_regular(g: &Graph, params: &RegularizeParams) -> Result<RegularizeReport> {
    if g.n() == 0 {
        return Err(invalid("graph has no vertices"));
    }
    let eps = params.epsilon;
    let core = peel(g);
    let mut bands: Vec<Vec<Vertex>> = Vec::new();
    {
        let core_graph = g.induced(&core);
        for (i, &v) in core.iter().enumerate() {
            let b = band_of(core_graph.degree(i));
            if bands.len() <= b {
                bands.resize(b + 1, Vec::new());
            }
            bands[b].push(v);
        }
    }
    let mut sets: Vec<Vec<Vertex>> = vec![(0..g.n()).collect(), core.clone()];
    for (i, band) in bands.iter().enumerate() {
        if band.is_empty() {
            continue;
        }
        sets.push(band.clone());
        if let Some(next) = bands.get(i + 1).filter(|b| !b.is_empty()) {
            let mut union: Vec<Vertex> = band.iter().chain(next).copied().collect();
            union.sort_unstable();
            sets.push(union);
        }
    }
    sets.retain(|s| !s.is_empty());
    sets.sort();
    sets.dedup();

    let input_k = achieved_k(g);
    let best = sets
        .into_par_iter()
        .map(|s| candidate(g, s, eps))
        .filter(|c| c.k <= input_k)
        .max_by(better)
        .expect("the input itself is always a candidate");
    Ok(RegularizeReport {
        achieved_k: best.k,
        theoretical_k: params.theoretical_k(),
        score: best.score,
        subgraph: best.graph,
        vertices: best.vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::pattern::kst_subdivision;

    #[test]
    fn almost_regular_examples() {
        let c8 = kst_subdivision(2, 2, 2).unwrap();
        assert!(is_almost_regular(&c8, 1.0));
        assert!(!is_almost_regular(&generators::star(3), 2.0));
        let mut k4e = generators::complete(4);
        k4e.remove_edge(0, 1);
        assert!(is_almost_regular(&k4e, 1.5));
        let mut iso = Graph::new(3);
        iso.add_edge(0, 1).unwrap();
        assert!(!is_almost_regular(&iso, 100.0));
        assert!(is_almost_regular(&Graph::new(3), 1.0));
    }

    #[test]
    fn regular_input_is_returned() {
        let p = RegularizeParams::new(0.5, 1.0).unwrap();
        let c8 = kst_subdivision(2, 2, 2).unwrap();
        let r = extract_almost_regular(&c8, &p).unwrap();
        assert_eq!(r.subgraph, c8);
        assert_eq!(r.achieved_k, 1.0);
        let pet = generators::petersen();
        assert_eq!(extract_almost_regular(&pet, &p).unwrap().subgraph, pet);
    }

    #[test]
    fn star_plus_k4_selects_k4() {
        let g = generators::star(9).disjoint_union(&generators::complete(4));
        assert_eq!(peel(&g), vec![10, 11, 12, 13]);
        let r = extract_almost_regular(&g, &RegularizeParams::new(0.5, 1.0).unwrap()).unwrap();
        assert_eq!(r.vertices, vec![10, 11, 12, 13]);
        assert_eq!(r.achieved_k, 1.0);
        assert_eq!(r.subgraph, generators::complete(4));
    }

    #[test]
    fn params_validation() {
        assert!(RegularizeParams::new(1.0, 1.0).is_err());
        assert!(RegularizeParams::new(0.0, 1.0).is_err());
        assert!(RegularizeParams::new(0.5, 0.5).is_err());
        let p = RegularizeParams::new(0.5, 1.0).unwrap();
        assert_eq!(p.theoretical_k(), 20.0 * 32.0);
    }

    #[test]
    fn edgeless_input() {
        let g = Graph::new(4);
        let r = extract_almost_regular(&g, &RegularizeParams::new(0.3, 1.0).unwrap()).unwrap();
        assert!(r.m() >= 1);
        assert_eq!(r.achieved_k, 1.0);
        assert_eq!(r.density_exponent(), None);
    }
}
