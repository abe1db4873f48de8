//! Embedding certificates.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Vertex;
use crate::pattern::PatternDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Assembled by the spider-chaining pipeline.
    Constructive,
    /// Found by backtracking search.
    Oracle,
}

/// A copy of a pattern inside a host graph.
///
/// `paths[e]` realizes edge `e` of the pattern's topological form
/// ([`PatternDescriptor::to_pattern`]) and runs from the image of its first
/// branch vertex to the image of its second. `roots[i]` is the image of the
/// pattern's `i`th root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pattern: PatternDescriptor,
    pub roots: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
    pub route: Route,
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    pattern: String,
    roots: Vec<Vertex>,
    paths: Vec<Vec<Vertex>>,
    route: Route,
}

impl Witness {
    /// Image of every branch vertex, read off the path endpoints.
    pub fn branch_images(&self) -> Option<Vec<Vertex>> {
        let p = self.pattern.to_pattern();
        if p.edges.len() != self.paths.len() {
            return None;
        }
        let mut img = vec![None; p.branches];
        for (&(a, b, _), path) in p.edges.iter().zip(&self.paths) {
            let (first, last) = (*path.first()?, *path.last()?);
            for (v, x) in [(a, first), (b, last)] {
                match img[v] {
                    None => img[v] = Some(x),
                    Some(y) if y != x => return None,
                    _ => {}
                }
            }
        }
        img.into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        let doc = WitnessDoc {
            pattern: self.pattern.to_string(),
            roots: self.roots.clone(),
            paths: self.paths.clone(),
            route: self.route,
        };
        serde_json::to_string_pretty(&doc).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Witness> {
        let doc: WitnessDoc =
            serde_json::from_str(text).map_err(|e| invalid(format!("witness document: {e}")))?;
        Ok(Witness {
            pattern: doc.pattern.parse()?,
            roots: doc.roots,
            paths: doc.paths,
            route: doc.route,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_branches() {
        let w = Witness {
            pattern: "kst:1,2^2".parse().unwrap(),
            roots: vec![0],
            paths: vec![vec![0, 3, 1], vec![0, 4, 2]],
            route: Route::Oracle,
        };
        let text = w.to_json();
        assert!(text.contains("\"route\": \"oracle\""));
        assert_eq!(Witness::from_json(&text).unwrap(), w);
        assert_eq!(w.branch_images(), Some(vec![0, 1, 2]));
        assert!(Witness::from_json("{}").is_err());
    }
}
