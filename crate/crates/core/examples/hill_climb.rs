//! Greedy maximal pattern-free graph, verified after the fact.
//!
//! `cargo run --release --example hill_climb -- 64 kst:2,2^2 2 7`

use std::time::Instant;

use kstk::oracle::{hill_climb_free, is_edge_maximal, is_pattern_free};
use kstk::PatternDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(48), |s| s.parse())?;
    let desc: PatternDescriptor = args.get(1).map_or("kst:2,2^2", String::as_str).parse()?;
    let passes: usize = args.get(2).map_or(Ok(1), |s| s.parse())?;
    let seed: u64 = args.get(3).map_or(Ok(0), |s| s.parse())?;

    let t = Instant::now();
    let g = hill_climb_free(n, &desc, passes, seed)?;
    let built = t.elapsed();
    let free = is_pattern_free(&g, &desc)?;
    let maximal = is_edge_maximal(&g, &desc)?;
    println!("n={n} pattern={desc} edges={} (heuristic lower bound)", g.m());
    println!("free={free} maximal={maximal} build={built:.2?} total={:.2?}", t.elapsed());
    Ok(())
}
