//! Push a concrete candidate through the thirteen-step implication chain and
//! report, with certified enclosures, which step breaks first.

use gronwall::chain::probe_chain;
use gronwall::factored::FactoredNumber;
use gronwall::primes::PrimeTable;
use gronwall::verdict::{Ladder, Verdict};

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(25_000);
    let n = FactoredNumber::from_u64(10_080, &table)?;
    let report = probe_chain(&n, &Ladder::default(), &table)?;

    println!("candidate {}", report.candidate);
    println!("relaxed premises: {:?}", report.relaxed_premises);
    for step in &report.steps {
        let mark = match step.verdict {
            Verdict::Holds => "ok  ",
            Verdict::Fails => "FAIL",
            Verdict::Indeterminate => "??  ",
            Verdict::NotApplicable => "n/a ",
        };
        print!("  [{mark}] {:<5} {}", step.id, step.statement);
        if let (Some(l), Some(r)) = (step.lhs_lo, step.rhs_hi) {
            print!("   (lhs >= {l:.6}, rhs <= {r:.6})");
        }
        println!();
    }
    match report.first_failure() {
        Some(id) => println!("chain breaks at {id}"),
        None => println!("chain survived (it should not have)"),
    }
    Ok(())
}
