//! Exact rationals. Comparison never returns Indeterminate: two `QExact`
//! values always order by integer cross-multiplication.

use crate::error::{Error, Result};
use crate::xreal::XReal;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QExact(BigRational);

impl QExact {
    /// Construct from numerator and denominator; stored reduced with a
    /// positive denominator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational with zero denominator".into()));
        }
        Ok(QExact(BigRational::new(num, den)))
    }

    pub fn from_integer(v: i64) -> Self {
        QExact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        QExact(BigRational::from_integer(v))
    }

    pub fn one() -> Self {
        QExact(BigRational::one())
    }

    pub fn zero() -> Self {
        QExact(BigRational::zero())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn add(&self, other: &QExact) -> QExact {
        QExact(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &QExact) -> QExact {
        QExact(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &QExact) -> QExact {
        QExact(&self.0 * &other.0)
    }

    pub fn div(&self, other: &QExact) -> Result<QExact> {
        if other.0.is_zero() {
            return Err(Error::Domain("division by zero rational".into()));
        }
        Ok(QExact(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<QExact> {
        if self.0.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(QExact(self.0.recip()))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Outward-rounded interval enclosure.
    pub fn to_xreal(&self, prec: u32) -> XReal {
        XReal::from_ratio(self.num(), self.den(), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_xreal(64).mid_f64()
    }

    /// Parse `num/den` or a plain integer.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
        let den: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
        QExact::new(num, den)
    }
}

impl fmt::Display for QExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Parse a decimal literal like `-1.78107` into an exact (num, den) pair.
pub fn parse_decimal(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("empty decimal {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigUint = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
    let den = BigUint::from(10u32).pow(frac_part.len() as u32);
    Ok((BigInt::from(num) * sign, BigInt::from(den)))
}
