//! The threshold recursion `f(l, L)`: exact values while they stay small,
//! certified bit-length bounds after that.
//!
//! `cargo run --example thresholds -- 2 8`

use kstk::threshold::{f_value, PaperTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l: f64 = args.first().map_or(Ok(2.0), |s| s.parse())?;
    let max_len: usize = args.get(1).map_or(Ok(6), |s| s.parse())?;

    for ell in 1..=max_len.min(3) {
        println!("f({ell}, {l}) = {}", f_value(ell, l)?);
    }
    let table = PaperTable::new(l, max_len)?;
    for ell in 1..=max_len {
        let f = table.get(ell).expect("within table");
        let (lo, hi) = f.bit_bounds();
        let kind = if f.value().is_some() { "exact" } else { "bounded" };
        println!("l={ell}: {lo}..={hi} bits ({kind})");
    }
    println!("strictly increasing: {:?}", table.is_strictly_increasing());
    Ok(())
}
