//! Certified interval arithmetic basics: every printed enclosure is a true
//! bracket of the exact value, at any requested precision.

use gronwall::constants::{euler_gamma, exp_gamma};
use gronwall::dyadic::Dyadic;
use gronwall::verdict::{certified_cmp, CmpOutcome, Ladder};
use gronwall::xreal::{ln_point, XReal};

fn main() -> Result<(), gronwall::error::Error> {
    // ln 2 at a few precisions; the enclosures nest as precision grows
    for prec in [32, 64, 128] {
        let (lo, hi) = ln_point(&Dyadic::from_int(2), prec)?;
        let x = XReal::from_endpoints(lo, hi, prec);
        println!("ln 2 @ {prec:>3} bits: [{:.20}, {:.20}]", x.lo_f64(), x.hi_f64());
    }

    let g = euler_gamma(128)?;
    println!("gamma       : {:.30}", g.mid_f64());
    println!("e^gamma     : {:.30}", exp_gamma(128)?.mid_f64());

    // exp(gamma) computed the long way must agree with the stored constant
    let routed = g.exp(128)?;
    println!("exp(gamma)  : {:.30}", routed.mid_f64());

    // a certified comparison that needs escalation: e^pi vs pi^e would be
    // nice, but ln 42 vs ln 42 shows the honest outcome for a tie
    let ladder = Ladder::default();
    let out = certified_cmp(
        &ladder,
        |p| XReal::from_int(42, p).ln(p),
        |p| XReal::from_int(42, p).ln(p),
    )?;
    assert_eq!(out, CmpOutcome::Indeterminate);
    println!("ln 42 vs ln 42: indeterminate at every rung, as it must be");
    Ok(())
}
