//! Independent witness checking.

use crate::graph::Graph;
use crate::witness::Witness;

/// `Ok` iff `w` is a copy of its pattern in `g`, otherwise the first reason
/// it is not.
pub fn check_embedding(g: &Graph, w: &Witness) -> Result<(), String> {
    let pattern = w.pattern.to_pattern();
    if w.paths.len() != pattern.edges.len() {
        return Err(format!(
            "{} paths for a pattern with {} edges",
            w.paths.len(),
            pattern.edges.len()
        ));
    }
    for (e, (&(_, _, len), path)) in pattern.edges.iter().zip(&w.paths).enumerate() {
        if path.len() != len + 1 {
            return Err(format!("path {e} has {} vertices, expected {}", path.len(), len + 1));
        }
        if let Some(&v) = path.iter().find(|&&v| v >= g.n()) {
            return Err(format!("path {e} uses vertex {v} outside the host"));
        }
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(format!("path {e} uses missing edge {}-{}", pair[0], pair[1]));
            }
        }
    }
    let images = w
        .branch_images()
        .ok_or("path endpoints disagree on a branch vertex")?;
    let mut owner = vec![None; g.n()];
    for (b, &x) in images.iter().enumerate() {
        if let Some(c) = owner[x].replace(format!("branch {b}")) {
            return Err(format!("vertex {x} is the image of {c} and branch {b}"));
        }
    }
    for (e, path) in w.paths.iter().enumerate() {
        for &x in &path[1..path.len() - 1] {
            if let Some(c) = owner[x].replace(format!("path {e}")) {
                return Err(format!("interior vertex {x} of path {e} is also used by {c}"));
            }
        }
    }
    let roots: Vec<usize> = pattern.roots.iter().map(|&r| images[r]).collect();
    if roots != w.roots {
        return Err(format!("roots {:?} do not match branch images {:?}", w.roots, roots));
    }
    Ok(())
}

/// Boolean form of [`check_embedding`].
pub fn verify_embedding(g: &Graph, w: &Witness) -> bool {
    check_embedding(g, w).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{instantiate, PatternDescriptor};
    use crate::witness::Route;

    fn identity() -> (Graph, Witness) {
        let desc = PatternDescriptor::kst(2, 3, 2);
        let g = instantiate(&desc);
        let paths = desc.to_pattern().edge_paths();
        let w = Witness {
            pattern: desc,
            roots: vec![0, 1],
            paths,
            route: Route::Oracle,
        };
        (g, w)
    }

    #[test]
    fn identity_accepted() {
        let (g, w) = identity();
        assert_eq!(check_embedding(&g, &w), Ok(()));
    }

    #[test]
    fn missing_edge_rejected() {
        let (mut g, w) = identity();
        let p = &w.paths[0];
        g.remove_edge(p[0], p[1]);
        assert!(!verify_embedding(&g, &w));
    }

    #[test]
    fn shared_interior_rejected() {
        let (mut g, mut w) = identity();
        // reroute path 1 through path 0's midpoint
        let mid = w.paths[0][1];
        let (a, b) = (w.paths[1][0], w.paths[1][2]);
        if !g.has_edge(mid, b) {
            g.add_edge(mid, b).unwrap();
        }
        assert!(g.has_edge(a, mid));
        w.paths[1] = vec![a, mid, b];
        let err = check_embedding(&g, &w).unwrap_err();
        assert!(err.contains("interior"), "{err}");
    }

    #[test]
    fn wrong_roots_rejected() {
        let (g, mut w) = identity();
        w.roots = vec![1, 0];
        assert!(!verify_embedding(&g, &w));
    }
}
