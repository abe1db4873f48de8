//! A small sweep of heuristic lower bounds with the fitted slope next to
//! the theoretical exponent.
//!
//! `cargo run --release --example sweep -- kst:2,2^2 16:64:16 2 random-threshold`

use kstk::harness::{sweep, sweep_csv, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cfg = SweepConfig {
        pattern: args.first().map_or("kst:2,2^2", String::as_str).parse()?,
        n_range: args.get(1).map_or("16:48:16", String::as_str).parse()?,
        seeds: args.get(2).map_or(Ok(2), |s| s.parse())?,
        mode: args.get(3).map_or("hillclimb", String::as_str).parse()?,
        iters: 1,
        timing: true,
    };
    let out = sweep(&cfg)?;
    print!("{}", sweep_csv(&cfg, &out));
    Ok(())
}
