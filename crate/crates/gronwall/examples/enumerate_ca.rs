//! Colossally abundant numbers from the exponent-breakpoint replay: each
//! record multiplies the previous one by a single prime, and each carries the
//! epsilon range on which it maximizes sigma(n)/n^(1+eps).

use gronwall::abundance::enum_ca;
use gronwall::primes::PrimeTable;
use gronwall::verdict::Ladder;

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(200);
    let records = enum_ca(101, &Ladder::default(), &table)?;
    println!("{} CA records with largest prime <= 101", records.len());
    for r in &records {
        let eps_hi = r
            .epsilon_hi
            .map(|e| format!("{e:.6}"))
            .unwrap_or_else(|| "inf".into());
        let eps_lo = r
            .epsilon_lo
            .map(|e| format!("{e:.6}"))
            .unwrap_or_else(|| "...".into());
        println!(
            "  {:<40} eps in [{eps_lo}, {eps_hi}]  q_v = {:?}",
            r.n_factored.to_string(),
            r.q_v
        );
    }
    Ok(())
}
