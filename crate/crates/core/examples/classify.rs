//! Admissible/good classification of paths and spiders, printed as the
//! JSON report the CLI writes.

use kstk::goodness::GoodnessTables;
use kstk::harness::{classify_report, ClassifyParams};
use kstk::pattern::kst_subdivision;
use kstk::threshold::Thresholds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = kst_subdivision(2, 4, 2)?;
    let th = Thresholds::Constant(Some(1));
    let mut tables = GoodnessTables::classify_paths(&g, 4, th.clone())?;
    tables.classify_spiders(&g, &[2, 2])?;
    let params = ClassifyParams {
        graph: "K_{2,4}^2".into(),
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        k: 4,
        l: 2.0,
        threshold: th.label(),
        lv: Some(vec![2, 2]),
    };
    println!("{}", serde_json::to_string_pretty(&classify_report(&g, &tables, params))?);
    Ok(())
}
