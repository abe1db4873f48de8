//! Subdivisions and rooted blowups, checked against each other with the
//! isomorphism oracle.

use kstk::oracle::isomorphic;
use kstk::pattern::{kst_subdivision, subdivide};
use kstk::rooted::{rooted_blowup, RootedPattern};
use kstk::{generators, Graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c4 = Graph::parse("4 4\n0 1\n1 2\n2 3\n3 0")?;
    let c8 = subdivide(&c4, 2)?;
    println!("C4^2: n={} m={}", c8.n(), c8.m());

    let k33 = subdivide(&generators::complete_bipartite(3, 3), 2)?;
    println!("K33^2: n={} m={}", k33.n(), k33.m());

    for (s, t, k) in [(2, 2, 2), (2, 3, 2), (3, 2, 3)] {
        let blown = rooted_blowup(&RootedPattern::spider(&vec![k; s])?, t)?;
        let direct = kst_subdivision(s, t, k)?;
        println!(
            "{t} * spider({k} x {s}) ~ K_{{{s},{t}}}^{k}: {}",
            isomorphic(&blown, &direct)
        );
    }
    Ok(())
}
