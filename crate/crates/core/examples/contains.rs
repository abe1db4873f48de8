//! Backtracking containment with and without a search budget.

use kstk::generators;
use kstk::oracle::{contains, Containment, SearchBudget};
use kstk::PatternDescriptor;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generators::petersen();
    for p in ["kst:2,2^2", "cycle:5", "cycle:10", "kst:2,3^2"] {
        let desc: PatternDescriptor = p.parse()?;
        let verdict = match contains(&g, &desc, SearchBudget::UNLIMITED)? {
            Containment::Found(w) => format!("present, roots {:?}", w.roots),
            Containment::Absent => "absent".into(),
            Containment::BudgetExhausted => "budget exhausted".into(),
        };
        println!("petersen vs {p}: {verdict}");
    }
    let tight = SearchBudget::new(Some(5), None)?;
    let r = contains(&generators::random_gnm(40, 60, 2)?, &"kst:2,3^3".parse()?, tight)?;
    println!("five-node budget: {:?}", r == Containment::BudgetExhausted);
    Ok(())
}
