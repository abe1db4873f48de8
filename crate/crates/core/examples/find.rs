//! `find_kstk` end to end on a random host: whichever route succeeds, the
//! witness is checked by the oracle.
//!
//! `cargo run --release --example find -- 60 700 1`

use kstk::finder::{find_kstk, FindOptions};
use kstk::generators::random_gnm;
use kstk::oracle::verify_embedding;
use kstk::threshold::Thresholds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(60), |s| s.parse())?;
    let m: usize = args.get(1).map_or(Ok(700), |s| s.parse())?;
    let seed: u64 = args.get(2).map_or(Ok(1), |s| s.parse())?;

    let g = random_gnm(n, m, seed)?;
    let r = find_kstk(&g, 2, 2, 2, &Thresholds::Constant(Some(1)), &FindOptions::default())?;
    for a in &r.attempts {
        println!("lv {:?}: {} not good, family {}: {}", a.lv, a.not_good, a.family, a.outcome);
    }
    match r.witness {
        Some(w) => println!("{:?} route, verified={}\n{}", w.route, verify_embedding(&g, &w), w.to_json()),
        None => println!("{:?}", r.status),
    }
    Ok(())
}
