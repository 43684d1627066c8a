//! Nicolas's inequality over primorials: H_j = (N_j/phi(N_j)) / log log N_j
//! stays above e^gamma, creeping down towards it as j grows.

use gronwall::primes::PrimeTable;
use gronwall::scan::scan_nicolas;
use gronwall::verdict::Ladder;

fn main() -> Result<(), gronwall::error::Error> {
    let table = PrimeTable::new(10_000);
    let report = scan_nicolas(500, &Ladder::default(), &table)?;
    println!("j <= 500: {} hold, {} fail", report.holds, report.fails.len());
    for r in report.records.iter().step_by(100) {
        println!(
            "  j = {:>4} (p_j = {:>5})  H_j in [{:.9}, {:.9}]",
            r.j, r.p_j, r.h_lo, r.h_hi
        );
    }
    let last = report.records.last().unwrap();
    println!("margin over e^gamma at j = {}: {:.6}", last.j, last.h_lo - 1.781072417990198);
    Ok(())
}
