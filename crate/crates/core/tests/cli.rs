//! The binary's formats and exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use kstk::{generators, Graph, Witness};

fn dir(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("kstk-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&p).unwrap();
    p
}

fn run(d: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstk"))
        .current_dir(d)
        .arg("--quiet")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_c8_report() {
    let d = dir("classify");
    fs::write(d.join("c8.txt"), generators::cycle(8).unwrap().to_edge_list()).unwrap();
    let o = run(&d, &["classify", "--graph", "c8.txt", "--k", "2", "--L", "1", "--threshold", "const:1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for (len, row) in v["paths"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row["level"], (len + 1).to_string());
        assert_eq!(row["objects"], 8);
        assert_eq!(row["good"], 8);
    }
    let text = stdout(&o);
    let keys: Vec<usize> = ["\"tool\"", "\"version\"", "\"params\"", "\"paths\"", "\"spiders\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    fs::remove_dir_all(d).unwrap();
}

#[test]
fn find_exit_codes_and_witness_document() {
    let d = dir("find");
    fs::write(d.join("c8.txt"), generators::cycle(8).unwrap().to_edge_list()).unwrap();
    fs::write(d.join("c7.txt"), generators::cycle(7).unwrap().to_edge_list()).unwrap();
    fs::write(d.join("bad.txt"), "2 1\n0 0\n").unwrap();

    let o = run(&d, &["find", "--graph", "c8.txt", "--pattern", "kst:2,2^2", "--out", "w.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(d.join("w.json")).unwrap();
    let order: Vec<usize> = ["\"pattern\"", "\"roots\"", "\"paths\"", "\"route\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    let w = Witness::from_json(&text).unwrap();
    assert!(kstk::oracle::verify_embedding(&Graph::parse(&fs::read_to_string(d.join("c8.txt")).unwrap()).unwrap(), &w));

    let o = run(&d, &["find", "--graph", "c7.txt", "--pattern", "kst:2,2^2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&d, &["find", "--graph", "bad.txt", "--pattern", "kst:2,2^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&d, &["find", "--graph", "c8.txt", "--pattern", "kst:2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&d, &["find", "--graph", "missing.txt", "--pattern", "kst:2,2^2"]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(d).unwrap();
}

#[test]
fn verify_rejects_a_broken_witness() {
    let d = dir("verify");
    fs::write(d.join("c8.txt"), generators::cycle(8).unwrap().to_edge_list()).unwrap();
    assert!(run(&d, &["oracle", "contains", "--graph", "c8.txt", "--pattern", "cycle:8", "--out", "w.json"]).status.success());
    assert_eq!(stdout(&run(&d, &["verify", "--graph", "c8.txt", "--witness", "w.json"])), "valid\n");
    let mut g = generators::cycle(8).unwrap();
    g.remove_edge(0, 1);
    fs::write(d.join("cut.txt"), g.to_edge_list()).unwrap();
    let o = run(&d, &["verify", "--graph", "cut.txt", "--witness", "w.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid:"));
    fs::remove_dir_all(d).unwrap();
}

#[test]
fn sweep_csv_and_errors() {
    let d = dir("sweep");
    let o = run(&d, &["sweep", "--pattern", "cycle:8", "--n-range", "4:7:1", "--seeds", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,seed,edges,verified,wall_ms");
    assert_eq!(rows.len(), 1 + 4 * 2);
    assert!(rows[1..].iter().all(|r| r.ends_with(",true,NA")));
    assert!(text.contains("# slope="));
    assert!(text.contains("heuristic lower bound"));
    let o = run(&d, &["sweep", "--pattern", "cycle:8", "--n-range", "9:4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&d, &["sweep", "--pattern", "cycle:8", "--n-range", "4:5", "--seeds", "0"]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(d).unwrap();
}

#[test]
fn spiders_and_oracle_outputs() {
    let d = dir("misc");
    assert!(run(&d, &["gen", "complete", "--n", "4", "--out", "k4.txt"]).status.success());
    assert_eq!(stdout(&run(&d, &["spiders", "count", "--graph", "k4.txt", "--lv", "1,1"])), "lv=1,1 count=24\n");
    let by_leaf = stdout(&run(&d, &["spiders", "count", "--graph", "k4.txt", "--lv", "1,1", "--by-leaf"]));
    let lines: Vec<&str> = by_leaf.lines().collect();
    assert_eq!(lines[0], "leaf_1,leaf_2,count");
    assert_eq!(lines.len(), 1 + 12);
    assert!(lines[1..].iter().all(|l| l.ends_with(",2")));

    let o = run(&d, &["oracle", "extremal", "--n", "4", "--pattern", "cycle:4"]);
    assert_eq!(stdout(&o), "n=4 pattern=cycle:4 value=4 exhaustive=true\n");
    let o = run(&d, &["oracle", "contains", "--graph", "k4.txt", "--pattern", "kst:2,3^2", "--node-limit", "1"]);
    assert!(matches!(o.status.code(), Some(1) | Some(3)));
    let o = run(&d, &["--version"]);
    assert!(stdout(&o).starts_with("kstk "));
    fs::remove_dir_all(d).unwrap();
}
