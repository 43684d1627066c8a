//! Superabundant numbers two ways: exhaustive sieve scan versus the
//! structured shape enumeration, which agree on the shared range and then
//! the structured one keeps going far beyond u64.

use gronwall::abundance::{enum_sa_bruteforce, enum_sa_structured};
use gronwall::primes::PrimeTable;

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(2_000);
    let brute = enum_sa_bruteforce(1_000_000, &table)?;
    let structured = enum_sa_structured(40.0 * std::f64::consts::LN_10, &table)?;

    println!("brute force to 10^6: {} records", brute.len());
    println!("structured to 10^40: {} records", structured.len());

    // the structured records below 10^6 must be exactly the brute list
    let overlap = structured
        .iter()
        .filter(|r| r.log_n_hi < (1_000_000f64).ln())
        .count();
    println!("overlap below 10^6: {overlap} (brute has {})", brute.len());

    println!("last few structured records:");
    for r in structured.iter().rev().take(4).collect::<Vec<_>>().iter().rev() {
        println!(
            "  {}  (log10 n = {:.3}, p_k = {})",
            r.n_factored,
            r.log_n_lo / std::f64::consts::LN_10,
            r.p_k.unwrap()
        );
    }
    Ok(())
}
