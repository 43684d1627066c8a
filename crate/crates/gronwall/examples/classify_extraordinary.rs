//! Classify candidates as GA1 / GA2 / extraordinary. GA1 is decidable; GA2
//! only ever gets refuted or left standing up to a multiplier bound, so
//! "extraordinary" is at best Indeterminate — which is the whole point.

use gronwall::ga::{check_extraordinary, filter_doubled_primes};
use gronwall::factored::FactoredNumber;
use gronwall::primes::PrimeTable;
use gronwall::verdict::Ladder;

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(25_000);
    let ladder = Ladder::default();

    for n in [4u64, 36, 5040, 10080, 97] {
        let f = FactoredNumber::from_u64(n, &table)?;
        let c = check_extraordinary(&f, 100, &ladder, &table)?;
        println!(
            "n = {:>5}: GA1 {:?}, GA2 {:?}, extraordinary {:?}  {:?}",
            n, c.ga1.verdict, c.ga2.outcome, c.extraordinary, c.flags
        );
    }

    // doubled primes 2w are the classical GA2 seed candidates; below 10^4
    // every one of them already fails Robin's bound and drops out
    let (checked, exceptions) = filter_doubled_primes(251, 10_000, &ladder, &table)?;
    println!(
        "doubled primes 2w, w in [251, 10^4]: {checked} checked, {} survived the G filter",
        exceptions.len()
    );
    Ok(())
}
