//! Audit the structural lemmas against enumerated record sets. Three of them
//! hold everywhere they apply; the primorial-window claim (L5) fails on every
//! single applicable record, always on the same side.

use gronwall::abundance::{enum_ca, enum_sa_structured};
use gronwall::audit::{audit_lemma, LemmaId};
use gronwall::primes::PrimeTable;
use gronwall::verdict::Ladder;

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(25_000);
    let ladder = Ladder::default();

    // L1 wants superabundant records; the window lemmas L3/L4/L5 only kick in
    // for large last primes, so feed them the colossally abundant tail
    let sa = enum_sa_structured(100.0, &table)?;
    let ca = enum_ca(22_000, &ladder, &table)?;
    println!("{} SA records (log n <= 100), {} CA records (p_k <= 22000)", sa.len(), ca.len());

    for (id, records) in [
        (LemmaId::L1, &sa),
        (LemmaId::L3, &ca),
        (LemmaId::L4, &ca),
        (LemmaId::L5, &ca),
    ] {
        let rep = audit_lemma(id, records, &ladder, &table)?;
        println!(
            "{:?}: {:>4} applicable, {:>4} hold, {:>4} fail, {} indeterminate",
            id, rep.applicable, rep.holds, rep.fails, rep.indeterminate
        );
        if let Some(m) = rep.min_margin {
            println!("      thinnest margin {m:.6}");
        }
        for f in rep.failures.iter().take(2) {
            println!("      counterexample: {}", f.detail);
        }
    }
    Ok(())
}
