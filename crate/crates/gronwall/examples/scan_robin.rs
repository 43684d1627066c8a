//! Scan Robin's inequality sigma(n)/n < e^gamma log log n over (5040, 10^6].
//!
//! Almost everything is discharged by the fast sieve filter; the handful of
//! highly abundant survivors get the certified interval treatment.

use gronwall::primes::PrimeTable;
use gronwall::scan::{scan_robin, ScanConfig};

fn main() -> Result<(), gronwall::error::Error> {
    let hi = 1_000_000;
    let table = PrimeTable::new(2_000);
    let report = scan_robin(5040, hi, &ScanConfig::default(), &table)?;

    println!(
        "checked {} integers: {} via the fast filter, {} certified",
        report.checked, report.fast_path, report.certified
    );
    println!("failures: {:?}", report.fails);
    println!("closest calls (certified G enclosures):");
    let mut records = report.records.clone();
    records.sort_by(|a, b| b.g_lo.partial_cmp(&a.g_lo).unwrap());
    for r in records.iter().take(8) {
        println!("  n = {:>7}  G in [{:.9}, {:.9}]  {}", r.n, r.g_lo, r.g_hi, r.verdict);
    }
    Ok(())
}
