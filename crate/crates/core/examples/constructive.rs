//! The constructive pipeline step by step on `K_{2,4}^2`: classify, refine a
//! family of not-good spiders, assemble `K_{2,2}^2` and verify it.

use kstk::finder::{assemble_blowup, check_conditions, refine_family, DEFAULT_MAX_STARTS};
use kstk::goodness::GoodnessTables;
use kstk::oracle::verify_embedding;
use kstk::pattern::kst_subdivision;
use kstk::threshold::Thresholds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = kst_subdivision(2, 4, 2)?;
    let th = Thresholds::Constant(Some(1));
    let lv = [2, 2];
    let mut tables = GoodnessTables::classify_paths(&g, 2, th.clone())?;
    tables.classify_spiders(&g, &lv)?;
    let t0 = tables.admissible_not_good(&g, &lv)?;
    println!("{} admissible but not good (2,2)-spiders", t0.len());

    let family = refine_family(t0, &th, g.min_degree(), 2.0)?;
    println!("refined family: {} members, conditions {:?}", family.len(), check_conditions(&family, &th));

    for t in 1..=3 {
        match assemble_blowup(&g, &family, &lv, t, DEFAULT_MAX_STARTS) {
            Ok(a) => println!(
                "t={t}: {} verified={} |Z|={}",
                a.witness.pattern,
                verify_embedding(&g, &a.witness),
                a.z_size
            ),
            Err(e) => println!("t={t}: {e}"),
        }
    }
    Ok(())
}
