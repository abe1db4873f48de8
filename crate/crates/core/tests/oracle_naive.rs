//! Containment search against a naive cycle enumerator. `kst:2,2^2` is the
//! 8-cycle, so both patterns reduce to cycle detection.

mod common;

use common::{all_graphs, gnp, has_cycle};
use kstk::oracle::{contains, verify_embedding, Containment, SearchBudget};
use kstk::{Graph, PatternDescriptor};

fn agree(g: &Graph) {
    for (p, len) in [("kst:2,2^2", 8), ("cycle:6", 6)] {
        let desc: PatternDescriptor = p.parse().unwrap();
        let got = contains(g, &desc, SearchBudget::UNLIMITED).unwrap();
        assert_ne!(got, Containment::BudgetExhausted);
        assert_eq!(got.witness().is_some(), has_cycle(g, len), "{p} in {}", g.to_edge_list());
        if let Some(w) = got.witness() {
            assert!(verify_embedding(g, w));
        }
    }
}

#[test]
fn every_graph_up_to_eight_vertices() {
    let mut classes = 0;
    for n in 1..=8 {
        for g in all_graphs(n) {
            agree(&g);
            classes += 1;
        }
    }
    // 1 + 2 + 4 + 11 + 34 + 156 + 1044 + 12346
    assert_eq!(classes, 13598);
}

#[test]
fn sampled_graphs_on_nine_vertices() {
    for seed in 0..400u64 {
        let n = 9;
        let p = 0.15 + 0.6 * ((seed % 13) as f64 / 12.0);
        agree(&gnp(n, p, seed));
    }
}
