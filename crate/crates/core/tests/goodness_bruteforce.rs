//! Classification tables against the recursive definition recomputed from
//! scratch.

mod common;

use common::{paths, spiders, Brute};
use kstk::goodness::GoodnessTables;
use kstk::threshold::Thresholds;
use kstk::{generators, Graph};

fn compare(g: &Graph, n_cap: Option<u64>, k: usize, lvs: &[&[usize]]) {
    let th = Thresholds::Constant(n_cap);
    let mut t = GoodnessTables::classify_paths(g, k, th).unwrap();
    let mut b = Brute::new(g, move |_| n_cap);
    for len in 1..=k {
        let bc = b.path_counts(len);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let want = bc.get(&(u, v)).copied().unwrap_or(0);
                assert_eq!(t.path_count(len, u, v), want, "len {len} pair {u},{v}");
            }
        }
        for p in paths(g, len) {
            let st = t.path_status(&p);
            assert_eq!(st.admissible, b.path_admissible(&p), "{p:?}");
            assert_eq!(st.good, b.path_is_good(&p), "{p:?}");
            assert!(!st.good || st.admissible);
        }
    }
    for lv in lvs {
        t.classify_spiders(g, lv).unwrap();
        let got = t.spider_counts(lv).unwrap();
        let want = b.spider_counts(lv);
        assert_eq!(got.len(), want.len(), "lv {lv:?}");
        for (leaf, c) in &want {
            assert_eq!(got.get(leaf), Some(c), "lv {lv:?} leaf {leaf:?}");
        }
        for s in spiders(g, lv) {
            let st = t.spider_status(&s).unwrap();
            assert_eq!(st.good, b.spider_is_good(&s), "{s:?}");
            assert!(!st.good || st.admissible);
        }
    }
}

#[test]
fn random_graphs_match_definition() {
    for seed in 0..24u64 {
        let n = 6 + (seed % 4) as usize;
        let g = common::gnp(n, 0.35 + 0.05 * (seed % 3) as f64, seed);
        let cap = [Some(0), Some(1), Some(2), Some(3), None][seed as usize % 5];
        compare(&g, cap, 3, &[&[2, 2], &[1, 2, 3], &[3, 1]]);
    }
}

#[test]
fn hosts_with_structure() {
    compare(&generators::petersen(), Some(1), 4, &[&[2, 2], &[2, 2, 2]]);
    compare(&generators::complete_bipartite(2, 4), Some(2), 3, &[&[1, 1], &[2, 1]]);
    compare(&generators::complete(5), Some(2), 3, &[&[1, 2], &[3, 2]]);
}

#[test]
fn k2q_hub_pair() {
    for q in 2..6u64 {
        let g = generators::complete_bipartite(2, q as usize);
        for n_cap in 1..6u64 {
            let mut t = GoodnessTables::classify_paths(&g, 2, Thresholds::Constant(Some(n_cap))).unwrap();
            assert_eq!(t.path_count(2, 0, 1), q);
            t.classify_spiders(&g, &[1, 1]).unwrap();
            assert_eq!(t.spider_count(&[1, 1], &[0, 1]), q);
            let bad = t.spider_stats(&[1, 1]).unwrap().admissible_not_good();
            // only the two hub leaf vectors can exceed the cap
            assert_eq!(bad > 0, q > n_cap, "q={q} N={n_cap}");
        }
    }
}

#[test]
fn extreme_thresholds() {
    let g = generators::petersen();
    let inf = GoodnessTables::classify_paths(&g, 4, Thresholds::Constant(None)).unwrap();
    for len in 1..=4 {
        let s = inf.path_stats(len).unwrap();
        assert_eq!((s.admissible, s.good), (s.objects, s.objects));
    }
    let zero = GoodnessTables::classify_paths(&g, 3, Thresholds::Constant(Some(0))).unwrap();
    assert_eq!(zero.path_stats(1).unwrap().good, 15);
    assert_eq!(zero.path_stats(2).unwrap().good, 0);
    assert_eq!(zero.path_stats(3).unwrap().admissible, 0);
}
