//! Spider enumeration: totals and per-leaf-vector counts.

use kstk::spiders::{count_by_leaf, count_spiders, enumerate_spiders};
use kstk::generators;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generators::petersen();
    for lv in [vec![1, 1], vec![2, 2], vec![1, 2, 3]] {
        println!("petersen lv={lv:?}: {} spiders", count_spiders(&g, &lv));
    }
    let c8 = generators::cycle(8)?;
    for (leaf, c) in count_by_leaf(enumerate_spiders(&c8, &[2, 2])).into_iter().take(4) {
        println!("C8 (2,2) leaf {leaf:?}: {c}");
    }
    Ok(())
}
