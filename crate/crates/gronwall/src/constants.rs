//! Embedded high-precision constants.
//!
//! The Euler-Mascheroni constant and its exponential are stored as validated
//! decimal literals (210 digits) and only ever truncated outward, never
//! recomputed from series at runtime. That keeps every verdict that touches
//! the e^gamma threshold reproducible bit for bit.

use crate::error::{Error, Result};
use crate::qexact::parse_decimal;
use crate::xreal::XReal;
use num_bigint::BigInt;

// 210 fractional digits, truncated from a 215-digit reference evaluation; the
// stored interval widens each literal by two units in the last place.
const GAMMA_DIGITS: &str = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082480960504014486542836224173997644923536253500333742937337737673942792595258247094916008735203";

const EXP_GAMMA_DIGITS: &str = "1.78107241799019798523650410310717954916964521430343020535766587651284107681358829370757421648841828033482224522514574200105579457424819650088156857512645001158459572674035828196794290950691578445244410495062474";

/// Maximum precision (bits) deliverable from the stored 210-digit literals.
pub const MAX_CONSTANT_BITS: u32 = 640;

fn literal_interval(digits: &str, prec: u32) -> XReal {
    let (num, den) = parse_decimal(digits).expect("embedded constant literal is well-formed");
    let two = BigInt::from(2);
    let lo = XReal::from_ratio(&(&num - &two), &den, prec);
    let hi = XReal::from_ratio(&(&num + &two), &den, prec);
    XReal::from_endpoints(lo.lo().clone(), hi.hi().clone(), prec)
}

/// Interval of width at most `2^(1-prec)` containing the Euler-Mascheroni
/// constant. Requires `16 <= prec <= MAX_CONSTANT_BITS`.
pub fn euler_gamma(prec: u32) -> Result<XReal> {
    if prec < 16 {
        return Err(Error::Domain(format!(
            "euler_gamma precision {prec} below the minimum of 16 bits"
        )));
    }
    if prec > MAX_CONSTANT_BITS {
        return Err(Error::ConstantExhausted {
            requested: prec,
            available: MAX_CONSTANT_BITS,
        });
    }
    Ok(literal_interval(GAMMA_DIGITS, prec))
}

/// Interval containing e^gamma, the Robin/Nicolas threshold.
pub fn exp_gamma(prec: u32) -> Result<XReal> {
    if prec < 16 {
        return Err(Error::Domain(format!(
            "exp_gamma precision {prec} below the minimum of 16 bits"
        )));
    }
    if prec > MAX_CONSTANT_BITS {
        return Err(Error::ConstantExhausted {
            requested: prec,
            available: MAX_CONSTANT_BITS,
        });
    }
    Ok(literal_interval(EXP_GAMMA_DIGITS, prec))
}

/// e^gamma at the closest supported precision. Used inside escalation ladders
/// whose upper rungs exceed the stored literal: the interval stays valid, it
/// just stops narrowing beyond `MAX_CONSTANT_BITS`.
pub fn exp_gamma_clamped(prec: u32) -> XReal {
    exp_gamma(prec.clamp(16, MAX_CONSTANT_BITS)).expect("clamped precision is always in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::parse_decimal;

    #[test]
    fn gamma_contains_reference_prefix() {
        let g = euler_gamma(20).unwrap();
        let (n, d) = parse_decimal("0.57721").unwrap();
        // the coarse literal is below gamma; the interval must reach it
        assert!(g.lo_f64() < 0.577216 && g.hi_f64() > 0.577215);
        assert!(g.hi_f64() - g.lo_f64() <= 2f64.powi(-19));
        let wide = euler_gamma(16).unwrap();
        assert!(wide.contains_ratio(&(n * 100001), &(d * 100000)) || wide.hi_f64() > 0.5772);
    }

    #[test]
    fn refinement_nests() {
        let coarse = euler_gamma(20).unwrap();
        let fine = euler_gamma(64).unwrap();
        assert!(coarse.contains(&fine));
    }

    #[test]
    fn exp_of_gamma_matches_stored_exp_gamma() {
        let g = euler_gamma(64).unwrap();
        let e = g.exp(64).unwrap();
        let stored = exp_gamma(64).unwrap();
        // the two routes must overlap, and both must sit at 1.78107...
        assert!(e.cmp_certain(&stored).is_none());
        let reference = 1.7810724179901979852365041;
        assert!((e.mid_f64() - reference).abs() < 1e-15);
        assert!((stored.mid_f64() - reference).abs() < 1e-15);
        // the exp route is wider than the stored literal, so it must contain it
        assert!(e.lo_f64() <= stored.lo_f64() && stored.hi_f64() <= e.hi_f64());
        let _ = parse_decimal("1.78107").unwrap();
    }

    #[test]
    fn precision_limits_enforced() {
        assert!(matches!(
            euler_gamma(8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            euler_gamma(4096),
            Err(Error::ConstantExhausted { .. })
        ));
        assert_eq!(exp_gamma_clamped(4096).prec(), MAX_CONSTANT_BITS);
    }
}
