//! Factored integers: run-length-encoded prime-exponent segments.
//!
//! A `FactoredNumber` stores `(exponent, prime_lo, prime_hi)` segments meaning
//! every prime in the inclusive range occurs with that exponent. This is the
//! only representation that scales to candidates whose logarithm runs to
//! millions: a number with a billion distinct primes almost all at exponent 1
//! costs one segment per distinct exponent level.

use crate::error::{Error, Result};
use crate::primes::{factor_u64, is_prime_u64, next_prime, PrimeTable, RunningTheta};
use crate::qexact::QExact;
use crate::xreal::XReal;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub exponent: u32,
    pub lo: u64,
    pub hi: u64,
}

/// An integer >= 1 in factored form. The empty segment list is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredNumber {
    segments: Vec<Segment>,
}

/// Exact structural facts about a factored integer (no intervals involved).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureInfo {
    pub largest_prime: u64,
    pub exponent_of_largest: u32,
    /// Largest prime whose square divides n; `None` when n is squarefree.
    pub q_square: Option<u64>,
    pub is_even: bool,
}

/// Certified Gronwall ratio value: exact sigma(n)/n plus interval log log n
/// and their quotient.
#[derive(Debug, Clone)]
pub struct GValue {
    pub sigma_over_n: QExact,
    pub loglog_n: XReal,
    pub g: XReal,
}

impl FactoredNumber {
    pub fn one() -> Self {
        FactoredNumber { segments: vec![] }
    }

    pub fn is_one(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Build from explicit (prime, exponent) pairs; pairs need not be sorted.
    pub fn from_prime_exponents(pairs: &[(u64, u32)]) -> Result<Self> {
        let mut pairs: Vec<(u64, u32)> = pairs.iter().copied().filter(|&(_, a)| a > 0).collect();
        pairs.sort_unstable_by_key(|&(p, _)| p);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFactored(format!(
                    "duplicate prime {}",
                    w[0].0
                )));
            }
        }
        for &(p, _) in &pairs {
            if !is_prime_u64(p) {
                return Err(Error::InvalidFactored(format!("{p} is not prime")));
            }
        }
        let segments = pairs
            .into_iter()
            .map(|(p, a)| Segment {
                exponent: a,
                lo: p,
                hi: p,
            })
            .collect();
        Ok(FactoredNumber { segments }.canonicalized())
    }

    /// Trial-factor a native integer.
    pub fn from_u64(n: u64, table: &PrimeTable) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFactored("0 has no factorization".into()));
        }
        Self::from_prime_exponents(&factor_u64(n, table))
    }

    /// Build from an exponent profile over the first `exps.len()` primes.
    pub fn from_exponent_profile(exps: &[u32], table: &PrimeTable) -> Result<Self> {
        let mut pairs = Vec::with_capacity(exps.len());
        for (i, &a) in exps.iter().enumerate() {
            let p = table
                .nth(i)
                .ok_or_else(|| Error::PrimeTableTooSmall {
                    cap: table.cap(),
                    needed: u64::MAX,
                })?;
            if a > 0 {
                pairs.push((p, a));
            }
        }
        Self::from_prime_exponents(&pairs)
    }

    /// Primorial: product of the first `j` primes.
    pub fn primorial(j: usize, table: &PrimeTable) -> Result<Self> {
        if j == 0 {
            return Ok(Self::one());
        }
        let last = table.nth(j - 1).ok_or(Error::PrimeTableTooSmall {
            cap: table.cap(),
            needed: u64::MAX,
        })?;
        Ok(FactoredNumber {
            segments: vec![Segment {
                exponent: 1,
                lo: 2,
                hi: last,
            }],
        })
    }

    /// Merge mergeable neighbours and check ordering invariants.
    fn canonicalized(mut self) -> Self {
        self.segments.retain(|s| s.exponent > 0);
        self.segments.sort_by_key(|s| s.lo);
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for seg in self.segments.into_iter() {
            if let Some(last) = out.last_mut() {
                if last.exponent == seg.exponent && next_prime(last.hi) == seg.lo {
                    last.hi = seg.hi;
                    continue;
                }
            }
            out.push(seg);
        }
        FactoredNumber { segments: out }
    }

    /// Validate segment invariants (prime endpoints, ordering, disjointness).
    pub fn validate(&self) -> Result<()> {
        let mut prev_hi: Option<u64> = None;
        for s in &self.segments {
            if s.exponent == 0 {
                return Err(Error::InvalidFactored("zero exponent segment".into()));
            }
            if s.lo > s.hi {
                return Err(Error::InvalidFactored(format!(
                    "segment [{}..{}] reversed",
                    s.lo, s.hi
                )));
            }
            if !is_prime_u64(s.lo) || !is_prime_u64(s.hi) {
                return Err(Error::InvalidFactored(format!(
                    "segment [{}..{}] endpoints must be prime",
                    s.lo, s.hi
                )));
            }
            if let Some(ph) = prev_hi {
                if s.lo <= ph {
                    return Err(Error::InvalidFactored(
                        "segments overlap or are out of order".into(),
                    ));
                }
            }
            prev_hi = Some(s.hi);
        }
        Ok(())
    }

    pub fn is_even(&self) -> bool {
        self.segments.first().map(|s| s.lo == 2).unwrap_or(false)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.segments.last().map(|s| s.hi)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        for s in &self.segments {
            if s.lo <= p && p <= s.hi {
                return s.exponent;
            }
        }
        0
    }

    /// Number of distinct primes; needs the table to count segment ranges.
    pub fn distinct_primes(&self, table: &PrimeTable) -> Result<u64> {
        let mut count = 0u64;
        for s in &self.segments {
            table.require(s.hi)?;
            count += table.range(s.lo, s.hi).len() as u64;
        }
        Ok(count)
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn big_omega(&self, table: &PrimeTable) -> Result<u64> {
        let mut count = 0u64;
        for s in &self.segments {
            table.require(s.hi)?;
            count += s.exponent as u64 * table.range(s.lo, s.hi).len() as u64;
        }
        Ok(count)
    }

    /// Expand to explicit (prime, exponent) pairs. Refuses when the expansion
    /// would be absurdly large.
    pub fn to_prime_exponents(&self, table: &PrimeTable) -> Result<Vec<(u64, u32)>> {
        let n = self.distinct_primes(table)?;
        if n > 10_000_000 {
            return Err(Error::Domain(format!(
                "refusing to expand {n} distinct primes"
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        for s in &self.segments {
            for &p in table.range(s.lo, s.hi) {
                out.push((p, s.exponent));
            }
        }
        Ok(out)
    }

    /// Exact integer value, or `None` when it exceeds `max_bits`.
    pub fn value(&self, table: &PrimeTable, max_bits: u64) -> Result<Option<BigUint>> {
        // cheap size estimate first: sum a * count * log2(hi)
        let mut est = 0f64;
        for s in &self.segments {
            table.require(s.hi)?;
            let cnt = table.range(s.lo, s.hi).len() as f64;
            est += s.exponent as f64 * cnt * (s.hi as f64).log2();
        }
        if est > max_bits as f64 + 64.0 {
            return Ok(None);
        }
        let mut factors: Vec<BigUint> = Vec::new();
        for s in &self.segments {
            for &p in table.range(s.lo, s.hi) {
                factors.push(BigUint::from(p).pow(s.exponent));
            }
        }
        let v = product_tree(factors);
        if v.bits() > max_bits {
            return Ok(None);
        }
        Ok(Some(v))
    }

    pub fn to_u64(&self, table: &PrimeTable) -> Result<Option<u64>> {
        Ok(self.value(table, 64)?.and_then(|v| {
            let digits = v.to_u64_digits();
            match digits.len() {
                0 => Some(1),
                1 => Some(digits[0]),
                _ => None,
            }
        }))
    }

    /// Exact sigma(n)/n as an unreduced fraction (num, den).
    pub fn sigma_ratio_raw(&self, table: &PrimeTable) -> Result<(BigUint, BigUint)> {
        let mut nums: Vec<BigUint> = Vec::new();
        let mut dens: Vec<BigUint> = Vec::new();
        for s in &self.segments {
            table.require(s.hi)?;
            let a = s.exponent;
            for &p in table.range(s.lo, s.hi) {
                let pb = BigUint::from(p);
                // sigma(p^a)/p^a = (p^(a+1) - 1) / (p^a (p - 1))
                nums.push(pb.pow(a + 1) - 1u32);
                dens.push(pb.pow(a) * (p - 1));
            }
        }
        Ok((product_tree(nums), product_tree(dens)))
    }

    /// Exact sigma(n)/n, reduced.
    pub fn sigma_ratio(&self, table: &PrimeTable) -> Result<QExact> {
        let (num, den) = self.sigma_ratio_raw(table)?;
        QExact::new(BigInt::from(num), BigInt::from(den))
    }

    /// Exact phi(n)/n = prod (1 - 1/p) over distinct primes, reduced.
    pub fn phi_ratio(&self, table: &PrimeTable) -> Result<QExact> {
        let mut nums: Vec<BigUint> = Vec::new();
        let mut dens: Vec<BigUint> = Vec::new();
        for s in &self.segments {
            table.require(s.hi)?;
            for &p in table.range(s.lo, s.hi) {
                nums.push(BigUint::from(p - 1));
                dens.push(BigUint::from(p));
            }
        }
        QExact::new(
            BigInt::from(product_tree(nums)),
            BigInt::from(product_tree(dens)),
        )
    }

    /// Certified ln n, summed segment-wise as exponent * (theta over range).
    pub fn log_n(&self, prec: u32, table: &PrimeTable) -> Result<XReal> {
        if self.is_one() {
            return Err(Error::LogLogDomain);
        }
        let mut total = XReal::from_int(0, prec);
        for s in &self.segments {
            table.require(s.hi)?;
            let mut acc = RunningTheta::new(prec + 128);
            for &p in table.range(s.lo, s.hi) {
                acc.push_prime(p);
            }
            let part = acc.theta(prec)?.mul_int(s.exponent as i64, prec);
            total = total.add(&part, prec);
        }
        Ok(total)
    }

    /// Certified ln ln n; defined for n >= 2 and negative exactly for n = 2.
    pub fn loglog_n(&self, prec: u32, table: &PrimeTable) -> Result<XReal> {
        self.log_n(prec, table)?.ln(prec)
    }

    /// Certified Gronwall ratio G(n) = sigma(n) / (n ln ln n) for n >= 2.
    pub fn gronwall_g(&self, prec: u32, table: &PrimeTable) -> Result<GValue> {
        if self.is_one() {
            return Err(Error::GUndefined);
        }
        let sigma_over_n = self.sigma_ratio(table)?;
        let loglog_n = self.loglog_n(prec, table)?;
        let g = sigma_over_n.to_xreal(prec).div(&loglog_n, prec)?;
        Ok(GValue {
            sigma_over_n,
            loglog_n,
            g,
        })
    }

    /// Exact structure queries used by the lemma audits.
    pub fn structure(&self) -> Result<StructureInfo> {
        let last = self
            .segments
            .last()
            .ok_or_else(|| Error::Domain("structure of 1 undefined".into()))?;
        let q_square = self
            .segments
            .iter()
            .rev()
            .find(|s| s.exponent >= 2)
            .map(|s| s.hi);
        Ok(StructureInfo {
            largest_prime: last.hi,
            exponent_of_largest: last.exponent,
            q_square,
            is_even: self.is_even(),
        })
    }

    /// True when exponents are non-increasing in prime order, the prime
    /// support is an initial segment of the primes, and the last exponent is 1
    /// checks are separate so audits can report which part broke.
    pub fn sa_shape(&self) -> SaShape {
        let contiguous = self.support_is_initial_segment();
        let non_increasing = self
            .segments
            .windows(2)
            .all(|w| w[0].exponent >= w[1].exponent);
        let last_exponent_one = self.segments.last().map(|s| s.exponent == 1).unwrap_or(false);
        SaShape {
            contiguous,
            non_increasing,
            last_exponent_one,
        }
    }

    fn support_is_initial_segment(&self) -> bool {
        let mut expected = 2u64;
        for s in &self.segments {
            if s.lo != expected {
                return false;
            }
            expected = next_prime(s.hi);
        }
        !self.segments.is_empty()
    }

    /// Multiply by `p^k` (k may be negative to divide). Errors if dividing
    /// below exponent 0.
    pub fn mul_prime_power(&self, p: u64, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidFactored(format!("{p} is not prime")));
        }
        let cur = self.exponent_of(p) as i64;
        let new = cur + k;
        if new < 0 {
            return Err(Error::InvalidFactored(format!(
                "cannot divide: exponent of {p} would become negative"
            )));
        }
        let mut segs: Vec<Segment> = Vec::with_capacity(self.segments.len() + 2);
        let mut placed = false;
        for s in &self.segments {
            if p < s.lo || p > s.hi {
                segs.push(s.clone());
                continue;
            }
            // split [lo..hi] around p
            if s.lo < p {
                segs.push(Segment {
                    exponent: s.exponent,
                    lo: s.lo,
                    hi: prev_prime_below(p),
                });
            }
            if new > 0 {
                segs.push(Segment {
                    exponent: new as u32,
                    lo: p,
                    hi: p,
                });
            }
            if p < s.hi {
                segs.push(Segment {
                    exponent: s.exponent,
                    lo: next_prime(p),
                    hi: s.hi,
                });
            }
            placed = true;
        }
        if !placed {
            segs.push(Segment {
                exponent: new as u32,
                lo: p,
                hi: p,
            });
        }
        Ok(FactoredNumber { segments: segs }.canonicalized())
    }

    /// Multiply by another factored number (exponents add).
    pub fn mul(&self, other: &FactoredNumber, table: &PrimeTable) -> Result<Self> {
        // the smaller operand is expanded prime by prime
        let (base, small) = if other.segments.len() <= self.segments.len() {
            (self, other)
        } else {
            (other, self)
        };
        let pairs = small.to_prime_exponents(table)?;
        let mut acc = base.clone();
        for (p, a) in pairs {
            acc = acc.mul_prime_power(p, a as i64)?;
        }
        Ok(acc)
    }

    /// Exact numeric comparison of two factored integers: cancel shared
    /// content, then compare the residual products.
    pub fn cmp_value(&self, other: &FactoredNumber, table: &PrimeTable) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let a = self.to_prime_exponents(table)?;
        let b = other.to_prime_exponents(table)?;
        let mut lhs: Vec<BigUint> = Vec::new();
        let mut rhs: Vec<BigUint> = Vec::new();
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&(p, x)), Some(&(q, y))) if p == q => {
                    match x.cmp(&y) {
                        Ordering::Greater => lhs.push(BigUint::from(p).pow(x - y)),
                        Ordering::Less => rhs.push(BigUint::from(p).pow(y - x)),
                        Ordering::Equal => {}
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(p, x)), Some(&(q, _))) if p < q => {
                    lhs.push(BigUint::from(p).pow(x));
                    i += 1;
                }
                (Some(_), Some(&(q, y))) => {
                    rhs.push(BigUint::from(q).pow(y));
                    j += 1;
                }
                (Some(&(p, x)), None) => {
                    lhs.push(BigUint::from(p).pow(x));
                    i += 1;
                }
                (None, Some(&(q, y))) => {
                    rhs.push(BigUint::from(q).pow(y));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(product_tree(lhs).cmp(&product_tree(rhs)))
    }
}

fn prev_prime_below(p: u64) -> u64 {
    debug_assert!(p > 2);
    let mut c = p - 1;
    if c % 2 == 0 && c > 2 {
        c -= 1;
    }
    while c > 2 && !is_prime_u64(c) {
        c -= 2;
    }
    c.max(2)
}

/// Balanced product of a list of big integers.
pub fn product_tree(mut factors: Vec<BigUint>) -> BigUint {
    if factors.is_empty() {
        return BigUint::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len() / 2 + 1);
        let mut it = factors.chunks(2);
        for chunk in &mut it {
            match chunk {
                [a, b] => next.push(a * b),
                [a] => next.push(a.clone()),
                _ => unreachable!(),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaShape {
    pub contiguous: bool,
    pub non_increasing: bool,
    pub last_exponent_one: bool,
}

impl SaShape {
    pub fn all(&self) -> bool {
        self.contiguous && self.non_increasing && self.last_exponent_one
    }
}

/// Certified Nicolas ratio H_j = (N_j / phi(N_j)) / ln ln N_j for j >= 2.
pub fn nicolas_h(j: usize, prec: u32, table: &PrimeTable) -> Result<XReal> {
    if j < 2 {
        return Err(Error::Domain(
            "Nicolas ratio starts at j = 2 (ln ln N_1 is negative)".into(),
        ));
    }
    let nj = FactoredNumber::primorial(j, table)?;
    let phi = nj.phi_ratio(table)?;
    let inv_phi = phi.recip()?;
    let loglog = nj.loglog_n(prec, table)?;
    inv_phi.to_xreal(prec).div(&loglog, prec)
}

impl serde::Serialize for FactoredNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FactoredNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for FactoredNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for s in &self.segments {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            if s.lo == s.hi {
                if s.exponent == 1 {
                    write!(f, "{}", s.lo)?;
                } else {
                    write!(f, "{}^{}", s.lo, s.exponent)?;
                }
            } else if s.exponent == 1 {
                write!(f, "[{}..{}]", s.lo, s.hi)?;
            } else {
                write!(f, "[{}..{}]^{}", s.lo, s.hi, s.exponent)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for FactoredNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(FactoredNumber::one());
        }
        let mut segments = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty factor in {s:?}")));
            }
            let (base, exp) = match part.rsplit_once('^') {
                Some((b, e)) => {
                    let exp: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                    (b.trim(), exp)
                }
                None => (part, 1),
            };
            if exp == 0 {
                return Err(Error::Parse("exponent must be >= 1".into()));
            }
            let (lo, hi) = if let Some(range) = base.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
                let (l, h) = range
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("bad range {base:?}")))?;
                (
                    l.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad prime {l:?}")))?,
                    h.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad prime {h:?}")))?,
                )
            } else {
                let p: u64 = base
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime {base:?}")))?;
                (p, p)
            };
            segments.push(Segment {
                exponent: exp,
                lo,
                hi,
            });
        }
        let n = FactoredNumber { segments }.canonicalized();
        n.validate()?;
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::parse_decimal;

    fn table() -> PrimeTable {
        PrimeTable::new(20_000)
    }

    fn fnum(s: &str) -> FactoredNumber {
        s.parse().unwrap()
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["1", "2^5 * 3^2 * 5 * 7", "2^4 * 3^2 * [5..7]", "[2..97]", "2"] {
            let n: FactoredNumber = s.parse().unwrap();
            let printed = n.to_string();
            let back: FactoredNumber = printed.parse().unwrap();
            assert_eq!(n, back, "roundtrip of {s:?} via {printed:?}");
        }
    }

    #[test]
    fn canonical_merging() {
        // 5 and 7 at equal exponent merge into a range
        let n = fnum("2^4 * 3^2 * 5 * 7");
        assert_eq!(n.to_string(), "2^4 * 3^2 * [5..7]");
    }

    #[test]
    fn invalid_forms_rejected() {
        assert!("4".parse::<FactoredNumber>().is_err()); // 4 is not prime
        assert!("[6..11]".parse::<FactoredNumber>().is_err());
        assert!("3 * 2".parse::<FactoredNumber>().is_ok()); // sorted on canonicalization
        assert!("2 * 2".parse::<FactoredNumber>().is_err()); // duplicate prime
        assert!("2^0".parse::<FactoredNumber>().is_err());
    }

    #[test]
    fn sigma_ratio_examples() {
        let t = table();
        assert!(FactoredNumber::one().sigma_ratio(&t).unwrap().is_one());
        let n5040 = FactoredNumber::from_u64(5040, &t).unwrap();
        assert_eq!(n5040.to_string(), "2^4 * 3^2 * [5..7]");
        let q = n5040.sigma_ratio(&t).unwrap();
        assert_eq!(
            q,
            QExact::new(BigInt::from(19344), BigInt::from(5040)).unwrap()
        );
        // n = 2w with w an odd prime: sigma = 3(w + 1)
        let w = 9973u64;
        let n = FactoredNumber::from_u64(2 * w, &t).unwrap();
        let q = n.sigma_ratio(&t).unwrap();
        assert_eq!(
            q,
            QExact::new(BigInt::from(3 * (w + 1)), BigInt::from(2 * w)).unwrap()
        );
    }

    #[test]
    fn phi_ratio_examples() {
        let t = table();
        assert!(FactoredNumber::one().phi_ratio(&t).unwrap().is_one());
        let n6 = FactoredNumber::from_u64(6, &t).unwrap();
        assert_eq!(
            n6.phi_ratio(&t).unwrap(),
            QExact::new(BigInt::from(1), BigInt::from(3)).unwrap()
        );
        let n210 = FactoredNumber::from_u64(210, &t).unwrap();
        assert_eq!(
            n210.phi_ratio(&t).unwrap(),
            QExact::new(BigInt::from(8), BigInt::from(35)).unwrap()
        );
    }

    #[test]
    fn log_n_examples() {
        let t = table();
        let n2 = FactoredNumber::from_u64(2, &t).unwrap();
        let l = n2.log_n(64, &t).unwrap();
        let (num, den) = parse_decimal("0.69314718055994530941723212145817656807").unwrap();
        assert!(l.contains_ratio(&num, &den));

        let n210 = FactoredNumber::from_u64(210, &t).unwrap();
        let l = n210.log_n(64, &t).unwrap();
        let (num, den) = parse_decimal("5.34710753071746868051858943505006964188").unwrap();
        assert!(l.contains_ratio(&num, &den));

        // exponent linearity: log(2^10) = 10 log 2
        let n1024 = FactoredNumber::from_u64(1024, &t).unwrap();
        let l1024 = n1024.log_n(64, &t).unwrap();
        let tenln2 = n2.log_n(64, &t).unwrap().mul_int(10, 64);
        assert!(l1024.cmp_certain(&tenln2).is_none());

        assert!(FactoredNumber::one().log_n(64, &t).is_err());
    }

    #[test]
    fn gronwall_examples() {
        let t = table();
        let g5040 = FactoredNumber::from_u64(5040, &t)
            .unwrap()
            .gronwall_g(64, &t)
            .unwrap();
        assert!((g5040.g.mid_f64() - 1.7909733).abs() < 1e-5);

        let g2 = FactoredNumber::from_u64(2, &t)
            .unwrap()
            .gronwall_g(64, &t)
            .unwrap();
        assert!(g2.g.hi_f64() < 0.0);
        assert!((g2.g.mid_f64() - (-4.0926252)).abs() < 1e-5);
        assert!(g2.loglog_n.is_strictly_negative());

        let g10080 = FactoredNumber::from_u64(10080, &t)
            .unwrap()
            .gronwall_g(64, &t)
            .unwrap();
        assert!((g10080.g.mid_f64() - 1.7558/*approx*/).abs() < 1e-3);
        assert_eq!(
            g5040.g.cmp_certain(&g10080.g),
            Some(Ordering::Greater)
        );

        assert!(matches!(
            FactoredNumber::one().gronwall_g(64, &t),
            Err(Error::GUndefined)
        ));
    }

    #[test]
    fn structure_examples() {
        let t = table();
        let s = FactoredNumber::from_u64(10080, &t).unwrap().structure().unwrap();
        assert_eq!(
            s,
            StructureInfo {
                largest_prime: 7,
                exponent_of_largest: 1,
                q_square: Some(3),
                is_even: true
            }
        );
        let s30 = FactoredNumber::from_u64(30, &t).unwrap().structure().unwrap();
        assert_eq!(s30.q_square, None);
        let s4 = FactoredNumber::from_u64(4, &t).unwrap().structure().unwrap();
        assert_eq!((s4.largest_prime, s4.exponent_of_largest, s4.q_square), (2, 2, Some(2)));
    }

    #[test]
    fn sa_shape_checks() {
        let t = table();
        assert!(FactoredNumber::from_u64(5040, &t).unwrap().sa_shape().all());
        assert!(!FactoredNumber::from_u64(36, &t).unwrap().sa_shape().last_exponent_one);
        assert!(!FactoredNumber::from_u64(15, &t).unwrap().sa_shape().contiguous); // no 2
        let bad = FactoredNumber::from_u64(2 * 3 * 3 * 3 * 5 * 5 * 5 * 5, &t).unwrap();
        assert!(!bad.sa_shape().non_increasing);
    }

    #[test]
    fn mul_div_prime_powers() {
        let t = table();
        let n = FactoredNumber::from_u64(10080, &t).unwrap();
        let m = n.mul_prime_power(7, -1).unwrap();
        assert_eq!(m.to_u64(&t).unwrap(), Some(1440));
        let back = m.mul_prime_power(7, 1).unwrap();
        assert_eq!(back, n);
        let sq = n.mul_prime_power(7, 1).unwrap();
        assert_eq!(sq.to_u64(&t).unwrap(), Some(70560));
        assert!(n.mul_prime_power(11, -1).is_err());
        // splitting a range segment in the middle
        let r = fnum("[2..13]");
        let r2 = r.mul_prime_power(7, 2).unwrap();
        assert_eq!(r2.to_string(), "[2..5] * 7^3 * [11..13]");
        assert_eq!(r2.mul_prime_power(7, -2).unwrap(), r);
    }

    #[test]
    fn multiplicativity_on_coprime_parts() {
        let t = table();
        let a = FactoredNumber::from_u64(2u64.pow(4) * 27, &t).unwrap();
        let b = FactoredNumber::from_u64(5 * 7 * 121, &t).unwrap();
        let ab = a.mul(&b, &t).unwrap();
        let lhs = ab.sigma_ratio(&t).unwrap();
        let rhs = a.sigma_ratio(&t).unwrap().mul(&b.sigma_ratio(&t).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn value_and_compare() {
        let t = table();
        let a = FactoredNumber::from_u64(10080, &t).unwrap();
        assert_eq!(a.value(&t, 64).unwrap(), Some(BigUint::from(10080u64)));
        let b = FactoredNumber::from_u64(10081, &t).unwrap();
        assert_eq!(a.cmp_value(&b, &t).unwrap(), Ordering::Less);
        assert_eq!(a.cmp_value(&a.clone(), &t).unwrap(), Ordering::Equal);
    }

    #[test]
    fn nicolas_ratio_examples() {
        let t = table();
        assert!(nicolas_h(1, 64, &t).is_err());
        let h2 = nicolas_h(2, 64, &t).unwrap();
        assert!((h2.mid_f64() - 5.1440499).abs() < 1e-4);
        let h3 = nicolas_h(3, 64, &t).unwrap();
        assert!((h3.mid_f64() - 3.0634063).abs() < 1e-4);
    }

    #[test]
    fn primorial_structure() {
        let t = table();
        let n4 = FactoredNumber::primorial(4, &t).unwrap();
        assert_eq!(n4.to_string(), "[2..7]");
        assert_eq!(n4.to_u64(&t).unwrap(), Some(210));
    }
}
