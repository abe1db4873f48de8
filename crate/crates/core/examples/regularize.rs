//! Dense almost-regular subgraph of a random graph.
//!
//! `cargo run --release --example regularize -- 200 2000 0.4`

use kstk::generators::random_gnm;
use kstk::regularize::{achieved_k, extract_almost_regular, RegularizeParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(200), |s| s.parse())?;
    let m: usize = args.get(1).map_or(Ok(2000), |s| s.parse())?;
    let eps: f64 = args.get(2).map_or(Ok(0.4), |s| s.parse())?;

    let g = random_gnm(n, m, 1)?;
    let r = extract_almost_regular(&g, &RegularizeParams::new(eps, 1.0)?)?;
    println!("input:  n={} e={} K={:.3}", g.n(), g.m(), achieved_k(&g));
    println!("output: m={} e={} K={:.3}", r.m(), r.edges(), r.achieved_k);
    println!("exponent {:?}, theoretical K {:e}", r.density_exponent(), r.theoretical_k);
    Ok(())
}
