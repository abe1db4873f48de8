//! Rooted patterns, rooted blowups and the density calculus `rho_F(S)`.

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest non-root count checked by subset enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// A graph with a proper subset of root vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedPattern {
    graph: Graph,
    roots: Vec<Vertex>,
    /// Leg lengths when this is a spider rooted at its leaves.
    spider: Option<Vec<usize>>,
}

impl RootedPattern {
    pub fn new(graph: Graph, mut roots: Vec<Vertex>) -> Result<Self> {
        roots.sort_unstable();
        roots.dedup();
        if roots.iter().any(|&r| r >= graph.n()) {
            return Err(invalid("root out of range"));
        }
        if roots.len() == graph.n() {
            return Err(invalid("roots must be a proper subset of the vertices"));
        }
        Ok(RootedPattern {
            graph,
            roots,
            spider: None,
        })
    }

    /// Spider with the given leg lengths rooted at its leaves. The centre is
    /// vertex 0 and leg `i` occupies the next `lengths[i]` ids, walking
    /// outwards, so its leaf is the last of them.
    pub fn spider(lengths: &[usize]) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(invalid("spider legs must have length >= 1"));
        }
        let n = 1 + lengths.iter().sum::<usize>();
        let mut g = Graph::new(n);
        let mut roots = Vec::with_capacity(lengths.len());
        let mut next = 1;
        for &len in lengths {
            let mut prev = 0;
            for _ in 0..len {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
            roots.push(prev);
        }
        let mut p = RootedPattern::new(g, roots)?;
        p.spider = Some(lengths.to_vec());
        Ok(p)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn spider_lengths(&self) -> Option<&[usize]> {
        self.spider.as_deref()
    }

    pub fn is_root(&self, v: Vertex) -> bool {
        self.roots.binary_search(&v).is_ok()
    }

    pub fn non_roots(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| !self.is_root(v)).collect()
    }

    /// Same pattern under the vertex permutation `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> RootedPattern {
        RootedPattern {
            graph: self.graph.relabel(perm),
            roots: {
                let mut r: Vec<_> = self.roots.iter().map(|&v| perm[v]).collect();
                r.sort_unstable();
                r
            },
            spider: self.spider.clone(),
        }
    }
}

/// Rooted `t`-blowup `t*F`.
///
/// Layout: the roots come first (ascending), then copy `c` of the non-roots
/// occupies `|R| + c*(|V|-|R|) ..`, in ascending original order.
pub fn rooted_blowup(f: &RootedPattern, t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(invalid("blowup t must be >= 1"));
    }
    if f.roots.is_empty() {
        return Err(invalid("blowup needs at least one root"));
    }
    let g = &f.graph;
    let r = f.roots.len();
    let non_roots = f.non_roots();
    let w = non_roots.len();
    let mut local = vec![0usize; g.n()];
    for (i, &v) in f.roots.iter().enumerate() {
        local[v] = i;
    }
    for (i, &v) in non_roots.iter().enumerate() {
        local[v] = i;
    }
    let mut out = Graph::new(r + t * w);
    for c in 0..t {
        let id = |v: Vertex| {
            if f.is_root(v) {
                local[v]
            } else {
                r + c * w + local[v]
            }
        };
        for (u, v) in g.edges() {
            if f.is_root(u) && f.is_root(v) {
                if c == 0 {
                    out.add_edge(id(u), id(v))?;
                }
            } else {
                out.add_edge(id(u), id(v))?;
            }
        }
    }
    Ok(out)
}

/// `rho_F(S) = e_S / |S|` where `e_S` counts edges meeting `S`.
pub fn rooted_density(f: &RootedPattern, subset: &[Vertex]) -> Result<Ratio<u64>> {
    if subset.is_empty() {
        return Err(invalid("density subset must be nonempty"));
    }
    let mut inside = vec![false; f.graph.n()];
    for &v in subset {
        if v >= f.graph.n() {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        if f.is_root(v) {
            return Err(invalid(format!("vertex {v} is a root")));
        }
        inside[v] = true;
    }
    let size = inside.iter().filter(|&&b| b).count() as u64;
    let e = f
        .graph
        .edges()
        .filter(|&(u, v)| inside[u] || inside[v])
        .count() as u64;
    Ok(Ratio::new(e, size))
}

/// `rho(F)`: density of the full non-root set.
pub fn rho(f: &RootedPattern) -> Result<Ratio<u64>> {
    rooted_density(f, &f.non_roots())
}

/// Closed-form balance test for a spider rooted at its leaves:
/// `k_1 + ... + k_s >= (s-1) max k_i`.
pub fn spider_is_balanced(lengths: &[usize]) -> bool {
    let s = lengths.len();
    let max = lengths.iter().copied().max().unwrap_or(0);
    lengths.iter().sum::<usize>() >= s.saturating_sub(1) * max
}

/// Checks `rho_F(S) >= rho(F)` over every nonempty non-root subset.
pub fn is_balanced_exhaustive(f: &RootedPattern) -> Result<bool> {
    let non_roots = f.non_roots();
    let w = non_roots.len();
    if w == 0 {
        return Err(invalid("pattern has no non-root vertex"));
    }
    if w > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(format!(
            "{w} non-root vertices exceed the exhaustive limit {EXHAUSTIVE_LIMIT}"
        )));
    }
    let mut bit = vec![0u32; f.graph.n()];
    for (i, &v) in non_roots.iter().enumerate() {
        bit[v] = 1 << i;
    }
    let masks: Vec<u32> = f.graph.edges().map(|(u, v)| bit[u] | bit[v]).collect();
    let full = ((1u64 << w) - 1) as u32;
    let e_full = masks.iter().filter(|&&m| m != 0).count() as u64;
    let w = w as u64;
    for s in 1..=full {
        let e_s = masks.iter().filter(|&&m| m & s != 0).count() as u64;
        // e_S/|S| >= e_full/w
        if e_s * w < e_full * u64::from(s.count_ones()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Balance test: exhaustive when small enough, otherwise the spider closed
/// form, otherwise [`Error::TooLarge`].
pub fn is_balanced(f: &RootedPattern) -> Result<bool> {
    match is_balanced_exhaustive(f) {
        Err(Error::TooLarge(msg)) => match f.spider_lengths() {
            Some(lens) => Ok(spider_is_balanced(lens)),
            None => Err(Error::TooLarge(msg)),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spider_layout() {
        let p = RootedPattern::spider(&[1, 2]).unwrap();
        assert_eq!(p.graph().n(), 4);
        assert_eq!(p.roots(), &[1, 3]);
        assert!(p.graph().has_edge(0, 2) && p.graph().has_edge(2, 3));
    }

    #[test]
    fn blowup_counts() {
        let p = RootedPattern::spider(&[2, 2]).unwrap();
        let g = rooted_blowup(&p, 3).unwrap();
        assert_eq!((g.n(), g.m()), (11, 12));
        assert_eq!(rooted_blowup(&p, 1).unwrap(), p.graph().relabel(&[2, 3, 0, 4, 1]));
        assert!(rooted_blowup(&p, 0).is_err());
        let unrooted = RootedPattern::new(p.graph().clone(), vec![]).unwrap();
        assert!(rooted_blowup(&unrooted, 2).is_err());
        assert!(RootedPattern::new(p.graph().clone(), (0..5).collect()).is_err());
    }

    #[test]
    fn densities() {
        let p = RootedPattern::spider(&[2, 2]).unwrap();
        assert_eq!(rho(&p).unwrap(), Ratio::new(4, 3));
        // centre has degree 2
        assert_eq!(rooted_density(&p, &[0]).unwrap(), Ratio::from_integer(2));
        assert!(rooted_density(&p, &[]).is_err());
        assert!(rooted_density(&p, &[2]).is_err());
    }

    #[test]
    fn balance_examples() {
        assert!(spider_is_balanced(&[1, 2, 3]));
        assert!(!spider_is_balanced(&[1, 1, 5]));
        for lens in [[1, 2, 3], [1, 1, 5]] {
            let p = RootedPattern::spider(&lens).unwrap();
            assert_eq!(is_balanced(&p).unwrap(), spider_is_balanced(&lens));
        }
        let big = RootedPattern::spider(&[8, 8, 8]).unwrap();
        assert!(matches!(is_balanced_exhaustive(&big), Err(Error::TooLarge(_))));
        assert_eq!(is_balanced(&big), Ok(true));
        let plain = RootedPattern::new(big.graph().clone(), big.roots().to_vec()).unwrap();
        assert!(matches!(is_balanced(&plain), Err(Error::TooLarge(_))));
    }
}
