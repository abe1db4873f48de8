//! Rooted densities: exhaustive balancedness against the closed-form spider
//! criterion, and `rho` of equal-legged spiders.

use kstk::rooted::{is_balanced_exhaustive, rho, spider_is_balanced, RootedPattern};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for lens in [vec![1, 2, 3], vec![1, 1, 5], vec![2, 2], vec![1, 4]] {
        let f = RootedPattern::spider(&lens)?;
        println!(
            "spider {lens:?}: exhaustive={} criterion={}",
            is_balanced_exhaustive(&f)?,
            spider_is_balanced(&lens)
        );
    }
    for s in 2..=4 {
        for k in 2..=4 {
            let r = rho(&RootedPattern::spider(&vec![k; s])?)?;
            println!("rho(spider {k} x {s}) = {r}");
        }
    }
    Ok(())
}
