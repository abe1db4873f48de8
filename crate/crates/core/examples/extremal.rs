//! Exact `ex(n, H)` for tiny `n` by orderly generation.
//!
//! `cargo run --release --example extremal -- cycle:4 8`

use kstk::oracle::{extremal_number, SearchBudget};
use kstk::PatternDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let desc: PatternDescriptor = args.first().map_or("cycle:4", String::as_str).parse()?;
    let max_n: usize = args.get(1).map_or(Ok(7), |s| s.parse())?;
    for n in 1..=max_n {
        let r = extremal_number(n, &desc, SearchBudget::UNLIMITED)?;
        println!("ex({n}, {desc}) = {} exhaustive={}", r.value, r.exhaustive);
    }
    Ok(())
}
