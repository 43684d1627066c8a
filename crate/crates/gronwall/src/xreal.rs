//! Certified real intervals with dyadic endpoints and directed rounding.
//!
//! An `XReal` encloses the true value of an expression: `lo <= x <= hi` is an
//! invariant that every operation preserves. Transcendental evaluations (`ln`,
//! `exp`) round the lower endpoint down and the upper endpoint up, so a
//! comparison decided by disjoint intervals is immune to rounding error.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;
use std::sync::OnceLock;

/// Guard bits used internally above the requested precision.
const GUARD: u32 = 32;
/// Precision at which ln 2 is cached once per process.
const LN2_CACHE_BITS: u32 = 4480;

#[derive(Debug, Clone)]
pub struct XReal {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl XReal {
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        XReal { lo, hi, prec }
    }

    pub fn exact_dyadic(d: Dyadic, prec: u32) -> Self {
        XReal {
            lo: d.clone(),
            hi: d,
            prec,
        }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::exact_dyadic(Dyadic::from_int(v), prec)
    }

    /// Outward-rounded enclosure of `num/den`, `den > 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let n = Dyadic::from_bigint(num.clone());
        let d = Dyadic::from_bigint(den.clone());
        let w = prec + GUARD;
        XReal {
            lo: n.div_dir(&d, w, false),
            hi: n.div_dir(&d, w, true),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_down()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_up()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// msb of the interval width, `None` for a point interval.
    pub fn width_msb(&self) -> Option<i64> {
        let w = self.hi.sub(&self.lo);
        if w.is_zero() {
            None
        } else {
            Some(w.msb())
        }
    }

    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        self.lo.cmp_ratio(num, den) != Ordering::Greater
            && self.hi.cmp_ratio(num, den) != Ordering::Less
    }

    pub fn contains(&self, other: &XReal) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    fn rounded(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        XReal {
            lo: lo.round_down(prec + GUARD),
            hi: hi.round_up(prec + GUARD),
            prec,
        }
    }

    pub fn neg(&self) -> Self {
        XReal {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &XReal, prec: u32) -> Self {
        Self::rounded(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &XReal, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &XReal, prec: u32) -> Self {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self::rounded(lo, hi, prec)
    }

    pub fn mul_int(&self, k: i64, prec: u32) -> Self {
        let a = self.lo.mul_int(k);
        let b = self.hi.mul_int(k);
        if k >= 0 {
            Self::rounded(a, b, prec)
        } else {
            Self::rounded(b, a, prec)
        }
    }

    /// Reciprocal; the interval must not contain 0.
    pub fn recip(&self, prec: u32) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::Domain("reciprocal of interval containing 0".into()));
        }
        let w = prec + GUARD;
        let one = Dyadic::one();
        Ok(XReal {
            lo: one.div_dir(&self.hi, w, false),
            hi: one.div_dir(&self.lo, w, true),
            prec,
        })
    }

    pub fn div(&self, other: &XReal, prec: u32) -> Result<Self> {
        Ok(self.mul(&other.recip(prec + GUARD)?, prec))
    }

    /// Outward-rounded natural logarithm. The interval must lie strictly above 0.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::LogDomain);
        }
        let (lo, _) = ln_point(&self.lo, prec)?;
        let (_, hi) = ln_point(&self.hi, prec)?;
        Ok(XReal { lo, hi, prec })
    }

    /// Outward-rounded exponential.
    pub fn exp(&self, prec: u32) -> Result<Self> {
        let (lo, _) = exp_point(&self.lo, prec)?;
        let (_, hi) = exp_point(&self.hi, prec)?;
        Ok(XReal { lo, hi, prec })
    }

    /// Outward-rounded square root; requires `lo >= 0`.
    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::Domain("sqrt of interval below 0".into()));
        }
        let w = prec + GUARD;
        Ok(XReal {
            lo: self.lo.sqrt_dir(w, false),
            hi: self.hi.sqrt_dir(w, true),
            prec,
        })
    }

    /// Certified strict ordering: `Some(Less)` iff `self.hi < other.lo`,
    /// `Some(Greater)` iff `self.lo > other.hi`, otherwise `None`.
    pub fn cmp_certain(&self, other: &XReal) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Enclosure of ln 2, outward-rounded to `prec` significant bits.
pub fn ln2(prec: u32) -> XReal {
    let cached = LN2_CACHE.get_or_init(|| atanh_recip_series(3, LN2_CACHE_BITS).mul_int(2, LN2_CACHE_BITS));
    if prec <= LN2_CACHE_BITS - GUARD {
        XReal {
            lo: cached.lo.round_down(prec + GUARD),
            hi: cached.hi.round_up(prec + GUARD),
            prec,
        }
    } else {
        atanh_recip_series(3, prec).mul_int(2, prec)
    }
}

static LN2_CACHE: OnceLock<XReal> = OnceLock::new();

/// 2*atanh(1/k) via the odd series, in interval arithmetic at precision `w`.
fn atanh_recip_series(k: i64, prec: u32) -> XReal {
    let w = prec + GUARD;
    let one = Dyadic::one();
    let kd = Dyadic::from_int(k);
    let z = XReal {
        lo: one.div_dir(&kd, w, false),
        hi: one.div_dir(&kd, w, true),
        prec: w,
    };
    atanh_series(&z, w)
}

/// atanh over a small nonnegative interval `z` (`z.hi < 1/2`), certified.
fn atanh_series(z: &XReal, w: u32) -> XReal {
    debug_assert!(!z.lo.is_negative());
    let z2 = z.mul(z, w);
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut k: i64 = 1;
    loop {
        k += 2;
        term = term.mul(&z2, w);
        let contrib = XReal {
            lo: term.lo.div_dir(&Dyadic::from_int(k), w, false),
            hi: term.hi.div_dir(&Dyadic::from_int(k), w, true),
            prec: w,
        };
        sum = sum.add(&contrib, w);
        if term.hi.is_zero() || term.hi.msb() < -(w as i64) {
            break;
        }
    }
    // Remaining tail is below term.hi * z2/(1-z2) <= term.hi for z2 <= 1/2.
    XReal {
        lo: sum.lo.clone(),
        hi: sum.hi.add(&term.hi),
        prec: w,
    }
}

/// Certified enclosure of ln(d) for a single positive dyadic endpoint.
pub fn ln_point(d: &Dyadic, prec: u32) -> Result<(Dyadic, Dyadic)> {
    if !d.is_positive() {
        return Err(Error::LogDomain);
    }
    let w = prec + GUARD + 64;
    let b = d.msb(); // 2^(b-1) <= d < 2^b
    let shift = b - 1;
    let m = d.shl(-shift); // m in [1, 2)
    let mant_part = if m == Dyadic::one() {
        XReal::from_int(0, w)
    } else {
        // z = (m-1)/(m+1) in (0, 1/3)
        let num = m.sub(&Dyadic::one());
        let den = m.add(&Dyadic::one());
        let z = XReal {
            lo: num.div_dir(&den, w, false),
            hi: num.div_dir(&den, w, true),
            prec: w,
        };
        atanh_series(&z, w).mul_int(2, w)
    };
    let shift_part = ln2(w).mul_int(shift, w);
    let total = mant_part.add(&shift_part, w);
    Ok((total.lo.round_down(prec + GUARD), total.hi.round_up(prec + GUARD)))
}

/// Certified enclosure of exp(d) for a single dyadic endpoint.
pub fn exp_point(d: &Dyadic, prec: u32) -> Result<(Dyadic, Dyadic)> {
    if d.is_zero() {
        return Ok((Dyadic::one(), Dyadic::one()));
    }
    if d.msb() > 40 {
        return Err(Error::Domain("exp argument magnitude too large".into()));
    }
    let squarings = (d.msb() + 2).max(0) as u32;
    let w = prec + GUARD + 2 * squarings.max(8);
    let r = XReal::exact_dyadic(d.shl(-(squarings as i64)), w); // |r| <= 1/4
    let mut term = XReal::from_int(1, w);
    let mut sum = XReal::from_int(1, w);
    let mut i: i64 = 0;
    loop {
        i += 1;
        term = term.mul(&r, w);
        term = XReal {
            lo: term.lo.div_dir(&Dyadic::from_int(i), w, false),
            hi: term.hi.div_dir(&Dyadic::from_int(i), w, true),
            prec: w,
        };
        sum = sum.add(&term, w);
        let mag = term.lo.neg().max(term.hi.clone());
        if mag.is_zero() || mag.msb() < -(w as i64 + 2) {
            // Tail is geometric with ratio <= 1/2 at |r| <= 1/4.
            let tail = mag.add(&mag);
            sum = XReal {
                lo: sum.lo.sub(&tail),
                hi: sum.hi.add(&tail),
                prec: w,
            };
            break;
        }
    }
    let mut acc = sum;
    for _ in 0..squarings {
        acc = acc.mul(&acc.clone(), w);
    }
    Ok((acc.lo.round_down(prec + GUARD), acc.hi.round_up(prec + GUARD)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn contains_decimal(x: &XReal, s: &str) {
        // s is a decimal literal; check lo <= s <= hi exactly.
        let (num, den) = crate::qexact::parse_decimal(s).unwrap();
        assert!(
            x.contains_ratio(&num, &den),
            "interval [{}, {}] does not contain {}",
            x.lo_f64(),
            x.hi_f64(),
            s
        );
    }

    #[test]
    fn ln_of_one_is_zero() {
        let one = XReal::from_int(1, 64);
        let l = one.ln(64).unwrap();
        assert!(l.contains_ratio(&BigInt::from(0), &BigInt::from(1)));
        assert!(l.width_msb().unwrap_or(i64::MIN) < -60);
    }

    #[test]
    fn ln_two_matches_oracle() {
        // 80-digit reference value computed independently (mpmath, dps=80).
        let l = XReal::from_int(2, 256).ln(256).unwrap();
        contains_decimal(
            &l,
            "0.693147180559945309417232121458176568075500134360255254120680009493393621969694715605863326996418687542001481020570685734",
        );
        assert!(l.width_msb().unwrap() < -250);
    }

    #[test]
    fn ln_domain_error() {
        assert!(matches!(XReal::from_int(0, 64).ln(64), Err(Error::LogDomain)));
        assert!(matches!(XReal::from_int(-3, 64).ln(64), Err(Error::LogDomain)));
    }

    #[test]
    fn ln_of_e_contains_one() {
        let e = XReal::from_int(1, 128).exp(128).unwrap();
        let l = e.ln(128).unwrap();
        assert!(l.contains_ratio(&BigInt::from(1), &BigInt::from(1)));
    }

    #[test]
    fn exp_matches_oracle() {
        let e = XReal::from_int(1, 192).exp(192).unwrap();
        contains_decimal(
            &e,
            "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138217852516642742746639193200305992",
        );
        let big = XReal::from_int(10, 128).exp(128).unwrap();
        contains_decimal(&big, "22026.4657948067165169579006452842443663535126185567810742354263552252028185707925751991209681645258954515555010924578367");
    }

    #[test]
    fn monotone_refinement_ln() {
        let x = XReal::from_ratio(&BigInt::from(7919), &BigInt::from(1000), 64);
        let mut prev = x.ln(64).unwrap();
        for p in [128u32, 256, 1024, 4096] {
            let x2 = XReal::from_ratio(&BigInt::from(7919), &BigInt::from(1000), p);
            let cur = x2.ln(p).unwrap();
            assert!(prev.contains(&cur), "refinement widened at {} bits", p);
            prev = cur;
        }
    }

    #[test]
    fn interval_mul_signs() {
        let a = XReal::from_endpoints(Dyadic::from_int(-3), Dyadic::from_int(2), 64);
        let b = XReal::from_endpoints(Dyadic::from_int(-5), Dyadic::from_int(4), 64);
        let p = a.mul(&b, 64);
        assert!(p.lo <= Dyadic::from_int(-12) && p.hi >= Dyadic::from_int(15));
    }

    #[test]
    fn certified_ordering() {
        let a = XReal::from_int(1, 64);
        let b = XReal::from_int(2, 64);
        assert_eq!(a.cmp_certain(&b), Some(Ordering::Less));
        assert_eq!(b.cmp_certain(&a), Some(Ordering::Greater));
        assert_eq!(a.cmp_certain(&a), None); // identical points never order strictly
    }
}
