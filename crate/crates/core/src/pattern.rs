//! Pattern descriptors (`kst:2,3^2`, `spider:1,2*3`, ...) and their
//! topological form: branch vertices joined by paths of prescribed length.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::generators;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    CompleteBipartite { s: usize, t: usize },
    Cycle(usize),
    /// Spider with the given leg lengths, rooted at its leaves.
    Spider(Vec<usize>),
    Arbitrary { edges: Vec<(usize, usize)> },
}

/// A pattern together with its subdivision and blowup modifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternDescriptor {
    pub kind: PatternKind,
    /// Each edge of the base becomes a path of this many edges (`^k`).
    pub subdivision: usize,
    /// Rooted `t`-blowup (`*t`); only meaningful for spiders.
    pub blowup: Option<usize>,
}

impl PatternDescriptor {
    pub fn kst(s: usize, t: usize, k: usize) -> Self {
        PatternDescriptor {
            kind: PatternKind::CompleteBipartite { s, t },
            subdivision: k,
            blowup: None,
        }
    }

    pub fn spider_blowup(lengths: &[usize], t: usize) -> Self {
        PatternDescriptor {
            kind: PatternKind::Spider(lengths.to_vec()),
            subdivision: 1,
            blowup: Some(t),
        }
    }

    pub fn cycle(len: usize) -> Self {
        PatternDescriptor {
            kind: PatternKind::Cycle(len),
            subdivision: 1,
            blowup: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.subdivision == 0 {
            return Err(invalid("subdivision ^0"));
        }
        if self.blowup == Some(0) {
            return Err(invalid("blowup *0"));
        }
        match &self.kind {
            PatternKind::CompleteBipartite { s, t } => {
                if *s == 0 || *t == 0 {
                    return Err(invalid("kst needs s, t >= 1"));
                }
                if self.blowup.is_some() {
                    return Err(invalid("blowup applies to spider patterns only"));
                }
            }
            PatternKind::Cycle(len) => {
                if *len < 3 {
                    return Err(invalid("cycle length must be >= 3"));
                }
                if self.blowup.is_some() {
                    return Err(invalid("blowup applies to spider patterns only"));
                }
            }
            PatternKind::Spider(lens) => {
                if lens.is_empty() || lens.contains(&0) {
                    return Err(invalid("spider legs must have length >= 1"));
                }
            }
            PatternKind::Arbitrary { edges } => {
                if edges.is_empty() {
                    return Err(invalid("arbitrary pattern needs at least one edge"));
                }
                if self.blowup.is_some() {
                    return Err(invalid("blowup applies to spider patterns only"));
                }
                let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
                Graph::from_edges(n, edges.iter().copied())?;
            }
        }
        Ok(())
    }

    /// The topological form of this pattern.
    pub fn to_pattern(&self) -> Pattern {
        let k = self.subdivision;
        match &self.kind {
            PatternKind::CompleteBipartite { s, t } => {
                let edges = (0..*s)
                    .flat_map(|i| (0..*t).map(move |j| (i, s + j, k)))
                    .collect();
                Pattern {
                    branches: s + t,
                    edges,
                    roots: (0..*s).collect(),
                }
            }
            PatternKind::Spider(lens) => {
                let s = lens.len();
                let t = self.blowup.unwrap_or(1);
                let edges = (0..s)
                    .flat_map(|i| (0..t).map(move |j| (i, s + j, lens[i] * k)))
                    .collect();
                Pattern {
                    branches: s + t,
                    edges,
                    roots: (0..s).collect(),
                }
            }
            PatternKind::Cycle(len) => Pattern {
                branches: *len,
                edges: (0..*len).map(|i| (i, (i + 1) % len, k)).collect(),
                roots: Vec::new(),
            },
            PatternKind::Arbitrary { edges } => {
                let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
                Pattern {
                    branches: n,
                    edges: edges.iter().map(|&(u, v)| (u, v, k)).collect(),
                    roots: Vec::new(),
                }
            }
        }
    }

    /// Exponent `1 + (s-1)/(k_1+...+k_s)` of the known upper bound for
    /// `kst` and spider blowups, when it applies.
    pub fn theoretical_exponent(&self) -> Option<f64> {
        match &self.kind {
            PatternKind::CompleteBipartite { s, .. } => {
                Some(1.0 + (*s as f64 - 1.0) / (*s as f64 * self.subdivision as f64))
            }
            PatternKind::Spider(lens) if lens.len() >= 2 => {
                let total: usize = lens.iter().map(|l| l * self.subdivision).sum();
                Some(1.0 + (lens.len() as f64 - 1.0) / total as f64)
            }
            _ => None,
        }
    }
}

impl fmt::Display for PatternDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            PatternKind::CompleteBipartite { s, t } => write!(f, "kst:{s},{t}")?,
            PatternKind::Cycle(len) => write!(f, "cycle:{len}")?,
            PatternKind::Spider(lens) => write!(f, "spider:{}", join(lens))?,
            PatternKind::Arbitrary { edges } => {
                let es: Vec<_> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "edges:{}", es.join(","))?
            }
        }
        if self.subdivision != 1 {
            write!(f, "^{}", self.subdivision)?;
        }
        if let Some(t) = self.blowup {
            write!(f, "*{t}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let cut = s.find(['^', '*']).unwrap_or(s.len());
        let (base, mut mods) = s.split_at(cut);
        let (name, args) = base
            .split_once(':')
            .ok_or_else(|| invalid(format!("pattern {s:?}: expected `name:args`")))?;
        let nums = |a: &str| -> Result<Vec<usize>> {
            a.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| invalid(format!("pattern {s:?}: bad number {x:?}")))
                })
                .collect()
        };
        let kind = match name {
            "kst" => match nums(args)?.as_slice() {
                [a, b] => PatternKind::CompleteBipartite { s: *a, t: *b },
                _ => return Err(invalid(format!("pattern {s:?}: kst takes two numbers"))),
            },
            "cycle" => match nums(args)?.as_slice() {
                [l] => PatternKind::Cycle(*l),
                _ => return Err(invalid(format!("pattern {s:?}: cycle takes one number"))),
            },
            "spider" => PatternKind::Spider(nums(args)?),
            "edges" => {
                let edges = args
                    .split(',')
                    .map(|e| {
                        let (u, v) = e
                            .split_once('-')
                            .ok_or_else(|| invalid(format!("pattern {s:?}: edge {e:?}")))?;
                        let p = |x: &str| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| invalid(format!("pattern {s:?}: edge {e:?}")))
                        };
                        Ok((p(u)?, p(v)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PatternKind::Arbitrary { edges }
            }
            other => return Err(invalid(format!("unknown pattern kind {other:?}"))),
        };
        let mut desc = PatternDescriptor {
            kind,
            subdivision: 1,
            blowup: None,
        };
        let mut seen_sub = false;
        while !mods.is_empty() {
            let op = mods.as_bytes()[0];
            let rest = &mods[1..];
            let end = rest.find(['^', '*']).unwrap_or(rest.len());
            let val: usize = rest[..end]
                .trim()
                .parse()
                .map_err(|_| invalid(format!("pattern {s:?}: bad modifier")))?;
            match op {
                b'^' if !seen_sub => {
                    desc.subdivision = val;
                    seen_sub = true;
                }
                b'*' if desc.blowup.is_none() => desc.blowup = Some(val),
                _ => return Err(invalid(format!("pattern {s:?}: repeated modifier"))),
            }
            mods = &rest[end..];
        }
        desc.validate()?;
        Ok(desc)
    }
}

/// Branch vertices `0..branches` joined by internally disjoint paths.
///
/// `edges[e] = (a, b, len)` asks for a path of `len` edges from branch `a` to
/// branch `b`. `roots` are the branch vertices identified across blowup
/// copies (the leaves for spider patterns, the `s` side for `kst`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub branches: usize,
    pub edges: Vec<(usize, usize, usize)>,
    pub roots: Vec<usize>,
}

impl Pattern {
    pub fn vertex_count(&self) -> usize {
        self.branches + self.edges.iter().map(|e| e.2 - 1).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn base_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    /// Concrete graph: branch vertices first, then the interior vertices of
    /// each path in edge order, walking from `a` to `b`.
    pub fn instantiate(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count());
        let mut next = self.branches;
        for &(a, b, len) in &self.edges {
            let mut prev = a;
            for _ in 1..len {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
            g.add_edge(prev, b).unwrap();
        }
        g
    }

    /// For each edge, its vertices in [`Pattern::instantiate`] numbering,
    /// from `a` to `b`.
    pub fn edge_paths(&self) -> Vec<Vec<usize>> {
        let mut next = self.branches;
        self.edges
            .iter()
            .map(|&(a, b, len)| {
                let mut p = vec![a];
                p.extend(next..next + len - 1);
                next += len - 1;
                p.push(b);
                p
            })
            .collect()
    }
}

/// The `k`-subdivision `F^k`. Original vertices keep their ids; the `k-1`
/// interior vertices of each edge are appended edge by edge in
/// [`Graph::edges`] order, walking from the smaller endpoint.
pub fn subdivide(f: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(invalid("subdivision k must be >= 1"));
    }
    let pattern = Pattern {
        branches: f.n(),
        edges: f.edges().map(|(u, v)| (u, v, k)).collect(),
        roots: Vec::new(),
    };
    Ok(pattern.instantiate())
}

/// Concrete graph of a descriptor.
pub fn instantiate(desc: &PatternDescriptor) -> Graph {
    desc.to_pattern().instantiate()
}

/// `K_{s,t}^k` via the generic subdivision of `K_{s,t}`.
pub fn kst_subdivision(s: usize, t: usize, k: usize) -> Result<Graph> {
    subdivide(&generators::complete_bipartite(s, t), k)
}
