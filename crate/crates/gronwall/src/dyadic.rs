//! Dyadic rationals `mant * 2^exp` with exact arithmetic and directed rounding.
//!
//! These are the endpoints of every certified interval in the crate. Addition
//! and multiplication are exact; the only rounding ever performed is the
//! explicit `round_down` / `round_up` to a stated number of significant bits.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::from(1),
            exp: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    pub fn from_biguint(v: &BigUint) -> Self {
        Dyadic::new(BigInt::from_biguint(Sign::Plus, v.clone()), 0)
    }

    /// Exact conversion: every finite f64 is a dyadic rational.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 has no dyadic value");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0xf_ffff_ffff_ffff;
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(sign * mant as i64), exp)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Number of significant bits of the mantissa.
    pub fn sig_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the most significant bit: `2^(msb-1) <= |x| < 2^msb`.
    pub fn msb(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.mant.bits() as i64 + self.exp
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exp - lo.exp) as u64;
        Dyadic::new(&lo.mant + (&hi.mant << shift), lo.exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Largest dyadic with at most `prec` significant bits that is `<= self`.
    pub fn round_down(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        // BigInt >> floors toward -infinity, which is exactly directed-down.
        Dyadic::new(&self.mant >> shift, self.exp + shift as i64)
    }

    /// Smallest dyadic with at most `prec` significant bits that is `>= self`.
    pub fn round_up(&self, prec: u32) -> Self {
        self.neg().round_down(prec).neg()
    }

    /// Floor division of `num / den` scaled so the quotient carries `prec`
    /// significant bits; `up` selects the rounding direction.
    pub fn div_dir(&self, other: &Dyadic, prec: u32, up: bool) -> Self {
        assert!(!other.is_zero(), "division by zero dyadic");
        // self/other = (m1/m2) * 2^(e1-e2); scale m1 so quotient has prec+1 bits.
        let n_bits = self.mant.bits() as i64;
        let d_bits = other.mant.bits() as i64;
        let scale = (d_bits - n_bits + prec as i64 + 2).max(0) as u64;
        let num = &self.mant << scale;
        let q = floor_div(&num, &other.mant, up);
        Dyadic::new(q, self.exp - other.exp - scale as i64)
    }

    /// Directed square root. Requires `self >= 0`.
    pub fn sqrt_dir(&self, prec: u32, up: bool) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale to an integer with ~2*prec bits and even exponent offset.
        let bits = self.mant.bits() as i64;
        let mut scale = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exp - scale) % 2 != 0 {
            scale += 1;
        }
        let scaled = self.mant.magnitude() << (scale as u64);
        let root = scaled.sqrt(); // floor sqrt
        let half_exp = (self.exp - scale) / 2;
        if up {
            // floor-root r satisfies r^2 <= scaled; bump unless exact.
            if &root * &root == scaled {
                Dyadic::new(BigInt::from(root), half_exp)
            } else {
                Dyadic::new(BigInt::from(root + 1u32), half_exp)
            }
        } else {
            Dyadic::new(BigInt::from(root), half_exp)
        }
    }

    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        if self.exp >= other.exp {
            let shift = (self.exp - other.exp) as u64;
            (&self.mant << shift).cmp(&other.mant)
        } else {
            let shift = (other.exp - self.exp) as u64;
            self.mant.cmp(&(&other.mant << shift))
        }
    }

    /// f64 approximation guaranteed `<= self`.
    pub fn to_f64_down(&self) -> f64 {
        let mut v = self.to_f64_approx();
        if !v.is_finite() {
            return if v == f64::INFINITY { f64::MAX } else { f64::NEG_INFINITY };
        }
        while Dyadic::from_f64(v).cmp_dyadic(self) == Ordering::Greater {
            v = v.next_down();
        }
        v
    }

    /// f64 approximation guaranteed `>= self`.
    pub fn to_f64_up(&self) -> f64 {
        let mut v = self.to_f64_approx();
        if !v.is_finite() {
            return if v == f64::NEG_INFINITY { f64::MIN } else { f64::INFINITY };
        }
        while Dyadic::from_f64(v).cmp_dyadic(self) == Ordering::Less {
            v = v.next_up();
        }
        v
    }

    fn to_f64_approx(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round_down(64);
        let bits = r.mant.bits();
        let (m, e) = if bits > 53 {
            let s = bits - 53;
            (&r.mant >> s, r.exp + s as i64)
        } else {
            (r.mant.clone(), r.exp)
        };
        let mi: i64 = num_traits::ToPrimitive::to_i64(&m).unwrap();
        (mi as f64) * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Compare against an exact integer ratio num/den (den > 0).
    pub fn cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        // self = m*2^e; compare m*2^e*den with num.
        let lhs_base = &self.mant * den;
        if self.exp >= 0 {
            (lhs_base << self.exp as u64).cmp(num)
        } else {
            lhs_base.cmp(&(num << (-self.exp) as u64))
        }
    }
}

fn floor_div(num: &BigInt, den: &BigInt, up: bool) -> BigInt {
    use num_integer::Integer;
    let (q, r) = num.div_mod_floor(den);
    if up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_dyadic(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_dyadic(other)
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions() {
        let x = Dyadic::new(BigInt::from(0b101101), 0); // 45
        let down = x.round_down(3);
        let up = x.round_up(3);
        assert!(down.cmp_dyadic(&x) != Ordering::Greater);
        assert!(up.cmp_dyadic(&x) != Ordering::Less);
        assert_eq!(down, Dyadic::from_int(40)); // 101 << 3
        assert_eq!(up, Dyadic::from_int(48)); // 110 << 3
    }

    #[test]
    fn rounding_negative() {
        let x = Dyadic::from_int(-45);
        assert_eq!(x.round_down(3), Dyadic::from_int(-48));
        assert_eq!(x.round_up(3), Dyadic::from_int(-40));
    }

    #[test]
    fn round_monotone_in_precision() {
        let x = Dyadic::new(BigInt::from(982451653i64), -13);
        let mut prev_lo = x.round_down(4);
        let mut prev_hi = x.round_up(4);
        for p in 5..40 {
            let lo = x.round_down(p);
            let hi = x.round_up(p);
            assert!(lo >= prev_lo && hi <= prev_hi);
            prev_lo = lo;
            prev_hi = hi;
        }
    }

    #[test]
    fn div_brackets_quotient() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(3);
        let lo = a.div_dir(&b, 64, false);
        let hi = a.div_dir(&b, 64, true);
        assert_eq!(lo.cmp_ratio(&BigInt::from(1), &BigInt::from(3)), Ordering::Less);
        assert_eq!(hi.cmp_ratio(&BigInt::from(1), &BigInt::from(3)), Ordering::Greater);
        assert!(hi.sub(&lo).msb() < -60);
    }

    #[test]
    fn sqrt_brackets() {
        let x = Dyadic::from_int(2);
        let lo = x.sqrt_dir(64, false);
        let hi = x.sqrt_dir(64, true);
        assert!(lo.mul(&lo) <= x && hi.mul(&hi) >= x);
        assert!(hi.sub(&lo).msb() < -60);
        // exact square stays exact
        let f = Dyadic::from_int(49);
        assert_eq!(f.sqrt_dir(10, false), Dyadic::from_int(7));
        assert_eq!(f.sqrt_dir(10, true), Dyadic::from_int(7));
    }

    #[test]
    fn f64_roundtrip_direction() {
        let x = Dyadic::new(BigInt::from(1234567891234567i64), -31);
        let lo = x.to_f64_down();
        let hi = x.to_f64_up();
        assert!(Dyadic::from_f64(lo) <= x && Dyadic::from_f64(hi) >= x);
        assert!(hi - lo <= lo.abs() * 1e-15 + f64::MIN_POSITIVE);
    }
}
