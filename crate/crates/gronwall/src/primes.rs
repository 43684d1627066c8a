//! Prime generation and deterministic primality testing below 2^64.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::xreal::{ln_point, XReal};

/// Shared read-only prime table, built once per run by a bit sieve.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    cap: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(cap: u64) -> Self {
        PrimeTable {
            cap,
            primes: sieve_primes(cap),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn require(&self, needed: u64) -> Result<()> {
        if needed > self.cap {
            return Err(Error::PrimeTableTooSmall {
                cap: self.cap,
                needed,
            });
        }
        Ok(())
    }

    pub fn is_prime_in_table(&self, n: u64) -> bool {
        debug_assert!(n <= self.cap);
        self.primes.binary_search(&n).is_ok()
    }

    /// Primes in the inclusive range `[lo, hi]`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.primes.partition_point(|&p| p < lo);
        let end = self.primes.partition_point(|&p| p <= hi);
        &self.primes[start..end]
    }

    /// Index of `p` in the table (0-based), if present.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    pub fn nth(&self, idx: usize) -> Option<u64> {
        self.primes.get(idx).copied()
    }
}

/// Simple odd-only bit sieve.
pub fn sieve_primes(cap: u64) -> Vec<u64> {
    if cap < 2 {
        return vec![];
    }
    let n = cap as usize;
    let mut composite = vec![false; n / 2 + 1]; // index i represents 2i+1
    let mut primes = vec![2u64];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j <= n / 2 {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    for i in 1..=(n.saturating_sub(1)) / 2 {
        if !composite[i] {
            primes.push((2 * i + 1) as u64);
        }
    }
    primes
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all n < 2^64 (fixed base set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    if c <= 2 {
        return 2;
    }
    if c % 2 == 0 {
        c += 1;
    }
    while !is_prime_u64(c) {
        c += 2;
    }
    c
}

fn pollard_rho(n: u64) -> u64 {
    // n must be odd composite, not a prime power edge case handled by caller loop.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Full factorization of a native integer: trial division by table primes,
/// then Miller-Rabin plus Pollard rho for any large cofactor.
pub fn factor_u64(mut n: u64, table: &PrimeTable) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in table.primes() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut a = 0u32;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut extra: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime_u64(m) {
                extra.push(m);
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        extra.sort_unstable();
        let mut i = 0;
        while i < extra.len() {
            let p = extra[i];
            let mut a = 0u32;
            while i < extra.len() && extra[i] == p {
                a += 1;
                i += 1;
            }
            out.push((p, a));
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

/// Running product of primes kept as a certified dyadic interval, so that
/// theta(x) = ln(product of primes <= x) is one logarithm away at any point.
#[derive(Debug, Clone)]
pub struct RunningTheta {
    lo: Dyadic,
    hi: Dyadic,
    bits: u32,
    count: u64,
}

impl RunningTheta {
    /// `bits` is the working precision of the running mantissa; it bounds the
    /// precision of every theta query answered from this accumulator.
    pub fn new(bits: u32) -> Self {
        RunningTheta {
            lo: Dyadic::one(),
            hi: Dyadic::one(),
            bits,
            count: 0,
        }
    }

    pub fn push_prime(&mut self, p: u64) {
        let f = Dyadic::from_int(p as i64);
        self.lo = self.lo.mul(&f).round_down(self.bits);
        self.hi = self.hi.mul(&f).round_up(self.bits);
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Certified interval for the sum of logs of all pushed primes.
    pub fn theta(&self, prec: u32) -> Result<XReal> {
        let p = prec.min(self.bits.saturating_sub(64)).max(16);
        let (lo, _) = ln_point(&self.lo, p)?;
        let (_, hi) = ln_point(&self.hi, p)?;
        Ok(XReal::from_endpoints(lo, hi, p))
    }
}

/// Certified Chebyshev theta: sum of ln p over primes p <= x.
pub fn chebyshev_theta(x: u64, prec: u32, table: &PrimeTable) -> Result<XReal> {
    table.require(x)?;
    let mut acc = RunningTheta::new(prec + 128);
    for &p in table.range(2, x) {
        acc.push_prime(p);
    }
    acc.theta(prec)
}
