//! Enumeration of superabundant (SA) and colossally abundant (CA) numbers.
//!
//! SA numbers are the strict record-setters of sigma(n)/n. Two generators are
//! provided: a brute-force sieve scan (exhaustive, native range) and a
//! structured generator that only visits primorial-product shapes, which is
//! what lets the enumeration reach far beyond the sieve range. CA numbers are
//! the maximizers of sigma(n)/n^(1+eps) and come out of an exponent-breakpoint
//! replay.

use crate::error::{Error, Result};
use crate::factored::FactoredNumber;
use crate::primes::PrimeTable;
use crate::scan::sigma_segment;
use crate::verdict::{certified_cmp, CmpOutcome, Ladder};
use crate::xreal::{ln_point, XReal};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Largest supported natural-log limit for the structured generator:
/// ln(10^200).
pub const LOG_LIMIT_CAP: f64 = 460.51701859880916;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AbundanceKind {
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "CA")]
    Ca,
}

/// One enumerated record. `epsilon_*` fields are only present for CA records:
/// the record is the maximizer of sigma(n)/n^(1+eps) for eps in
/// [epsilon_lo, epsilon_hi]; `epsilon_hi = None` means unbounded above and
/// `epsilon_lo = None` means "down to the next, unenumerated breakpoint".
/// `sigma_ratio` is the reduced fraction as text, omitted when the numbers
/// are too large to be worth printing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbundanceRecord {
    pub n_factored: FactoredNumber,
    pub kind: AbundanceKind,
    pub epsilon_lo: Option<f64>,
    pub epsilon_hi: Option<f64>,
    pub p_k: Option<u64>,
    pub q_v: Option<u64>,
    pub log_n_lo: f64,
    pub log_n_hi: f64,
    pub sigma_ratio: Option<String>,
}

const SIGMA_RATIO_PRINT_BITS: u64 = 512;

fn make_record(
    n: &FactoredNumber,
    kind: AbundanceKind,
    epsilon_lo: Option<f64>,
    epsilon_hi: Option<f64>,
    log_override: Option<(f64, f64)>,
    table: &PrimeTable,
) -> Result<AbundanceRecord> {
    let (p_k, q_v) = match n.structure() {
        Ok(s) => (Some(s.largest_prime), s.q_square),
        Err(_) => (None, None), // n = 1
    };
    let (log_lo, log_hi) = match log_override {
        Some(pair) => pair,
        None if n.is_one() => (0.0, 0.0),
        None => {
            let l = n.log_n(64, table)?;
            (l.lo_f64(), l.hi_f64())
        }
    };
    // only reduce and print the ratio when n is small enough to be readable
    let sigma_ratio = if log_hi < SIGMA_RATIO_PRINT_BITS as f64 * std::f64::consts::LN_2 {
        let (num, den) = n.sigma_ratio_raw(table)?;
        if num.bits() <= SIGMA_RATIO_PRINT_BITS {
            Some(format!(
                "{}",
                crate::qexact::QExact::new(BigInt::from(num), BigInt::from(den))?
            ))
        } else {
            None
        }
    } else {
        None
    };
    Ok(AbundanceRecord {
        n_factored: n.clone(),
        kind,
        epsilon_lo,
        epsilon_hi,
        p_k,
        q_v,
        log_n_lo: log_lo,
        log_n_hi: log_hi,
        sigma_ratio,
    })
}

/// Exhaustive SA enumeration over `[1, hi]` via the segmented sigma sieve.
pub fn enum_sa_bruteforce(hi: u64, table: &PrimeTable) -> Result<Vec<AbundanceRecord>> {
    if hi < 1 {
        return Err(Error::Domain("empty enumeration range".into()));
    }
    let root = (hi as f64).sqrt() as u64 + 2;
    table.require(root)?;
    let mut out = Vec::new();
    // running record of sigma(n)/n as an exact fraction
    let (mut best_num, mut best_den) = (0u128, 1u128);
    let seg = 1u64 << 20;
    let mut lo = 1u64;
    while lo <= hi {
        let end = (lo + seg).min(hi + 1);
        let sig = sigma_segment(lo, end, table)?;
        for (i, &s) in sig.iter().enumerate() {
            let n = lo + i as u64;
            if (s as u128) * best_den > best_num * (n as u128) {
                best_num = s as u128;
                best_den = n as u128;
                let f = FactoredNumber::from_u64(n, table)?;
                out.push(make_record(&f, AbundanceKind::Sa, None, None, None, table)?);
            }
        }
        lo = end;
    }
    Ok(out)
}

/// A candidate shape: non-increasing exponents over an initial segment of the
/// primes (equivalently, a product of primorials).
#[derive(Debug, Clone)]
struct Shape {
    exps: Vec<u32>,
    log_f64: f64,
}

fn gen_shapes(
    primes: &[u64],
    log_limit: f64,
    idx: usize,
    max_exp: u32,
    cur: &mut Vec<u32>,
    log_acc: f64,
    out: &mut Vec<Shape>,
) {
    if idx >= primes.len() {
        return;
    }
    let lp = (primes[idx] as f64).ln();
    let mut acc = log_acc;
    for e in 1..=max_exp {
        acc += lp;
        if acc > log_limit {
            break;
        }
        cur.push(e);
        out.push(Shape {
            exps: cur.clone(),
            log_f64: acc,
        });
        gen_shapes(primes, log_limit, idx + 1, e, cur, acc, out);
        cur.pop();
    }
}

/// SA enumeration restricted to primorial-product shapes, which every SA
/// number has. Sound far beyond the sieve range, but the shape count grows
/// quickly with the limit; `log_limit` is natural log of the value bound.
pub fn enum_sa_structured(log_limit: f64, table: &PrimeTable) -> Result<Vec<AbundanceRecord>> {
    if !(log_limit > 0.0) {
        return Err(Error::Domain("log limit must be positive".into()));
    }
    if log_limit > LOG_LIMIT_CAP {
        return Err(Error::LogLimitCap {
            requested: log_limit,
            cap: LOG_LIMIT_CAP,
        });
    }
    // shapes use an initial segment of the primes, so the largest prime that
    // can appear satisfies theta(p) <= log_limit
    let mut pmax = 0u64;
    let mut theta_acc = 0.0f64;
    for &p in table.primes() {
        theta_acc += (p as f64).ln();
        pmax = p;
        if theta_acc > log_limit {
            break;
        }
    }
    if theta_acc <= log_limit {
        return Err(Error::PrimeTableTooSmall {
            cap: table.cap(),
            needed: table.cap().saturating_mul(2),
        });
    }
    let primes: Vec<u64> = table.range(2, pmax).to_vec();

    let mut shapes = Vec::new();
    // small slack so boundary shapes are not lost to f64 rounding
    let limit = log_limit * (1.0 + 1e-12) + 1e-9;
    let mut cur = Vec::new();
    gen_shapes(&primes, limit, 0, u32::MAX, &mut cur, 0.0, &mut shapes);

    // order by value: f64 log key with exact comparison for near-ties
    let mut nums: Vec<(f64, FactoredNumber)> = Vec::with_capacity(shapes.len() + 1);
    nums.push((0.0, FactoredNumber::one()));
    for s in shapes {
        nums.push((s.log_f64, FactoredNumber::from_exponent_profile(&s.exps, table)?));
    }
    let mut sort_err: Option<Error> = None;
    nums.sort_by(|a, b| {
        if (a.0 - b.0).abs() > 1e-8 {
            return a.0.partial_cmp(&b.0).unwrap();
        }
        match a.1.cmp_value(&b.1, table) {
            Ok(o) => o,
            Err(e) => {
                sort_err.get_or_insert(e);
                Ordering::Equal
            }
        }
    });
    if let Some(e) = sort_err {
        return Err(e);
    }

    let mut out = Vec::new();
    let (mut best_num, mut best_den) = (BigUint::from(0u32), BigUint::from(1u32));
    for (_, n) in nums {
        let (num, den) = n.sigma_ratio_raw(table)?;
        if &num * &best_den > &best_num * &den {
            best_num = num;
            best_den = den;
            out.push(make_record(&n, AbundanceKind::Sa, None, None, None, table)?);
        }
    }
    Ok(out)
}

/// CA exponent breakpoint: raising the exponent of `p` from `a-1` to `a`
/// becomes beneficial exactly when eps drops to
/// F(p, a) = log_p((p^(a+1) - 1)/(p^a - 1)) - 1.
fn breakpoint(p: u64, a: u32, prec: u32) -> Result<XReal> {
    let pb = BigInt::from(p);
    let num = pb.pow(a + 1) - 1;
    let den = pb.pow(a) - 1;
    let ratio = XReal::from_ratio(&num, &den, prec + 32).ln(prec)?;
    let lnp = {
        let (lo, hi) = ln_point(&crate::dyadic::Dyadic::from_int(p as i64), prec)?;
        XReal::from_endpoints(lo, hi, prec)
    };
    let one = XReal::from_int(1, prec);
    Ok(ratio.div(&lnp, prec)?.sub(&one, prec))
}

#[derive(Debug, Clone)]
struct Breakpoint {
    p: u64,
    a: u32,
    f: f64,
}

/// Enumerate CA numbers whose largest prime factor does not exceed
/// `max_prime`: all breakpoints F(p, a) >= F(p_last, 1) are found, ordered
/// descending (certified, smaller prime first on exact ties), then replayed
/// multiplying one prime at a time. One record per breakpoint; the first
/// record is n = 2, optimal for every eps above the next breakpoint.
pub fn enum_ca(
    max_prime: u64,
    ladder: &Ladder,
    table: &PrimeTable,
) -> Result<Vec<AbundanceRecord>> {
    if max_prime < 2 {
        return Err(Error::Domain("max_prime must be at least 2".into()));
    }
    if max_prime > table.cap() {
        return Err(Error::ExtendSieve { cap: table.cap() });
    }
    let primes: Vec<u64> = table.range(2, max_prime).to_vec();
    let p_last = *primes.last().ok_or_else(|| {
        Error::Domain("no primes at or below max_prime".into())
    })?;

    // f64 estimate of F(p, a); its error is far below the 1e-11 window
    // inside which the certified comparison takes over
    let f_est = |p: u64, a: u32| -> f64 {
        let pf = p as f64;
        let num = pf.powi(a as i32 + 1) - 1.0;
        let den = pf.powi(a as i32) - 1.0;
        (num / den).ln() / pf.ln() - 1.0
    };
    let fmin_est = f_est(p_last, 1);

    let mut bps: Vec<Breakpoint> = Vec::new();
    for &p in &primes {
        let mut a = 1u32;
        loop {
            let est = f_est(p, a);
            let keep = if (p, a) == (p_last, 1) || est > fmin_est + 1e-11 {
                true
            } else if est < fmin_est - 1e-11 {
                false
            } else {
                match certified_cmp(
                    ladder,
                    |prec| breakpoint(p, a, prec),
                    |prec| breakpoint(p_last, 1, prec),
                )? {
                    CmpOutcome::Less => false,
                    // exact equality of two breakpoints is believed impossible;
                    // keeping the candidate is the safe direction
                    CmpOutcome::Greater | CmpOutcome::Indeterminate => true,
                }
            };
            if !keep {
                break;
            }
            bps.push(Breakpoint { p, a, f: est });
            a += 1;
        }
    }

    // sort descending by the f64 key, then certify every adjacent pair,
    // bubbling until the order is confirmed
    bps.sort_by(|x, y| y.f.partial_cmp(&x.f).unwrap().then(x.p.cmp(&y.p)));
    loop {
        let mut swapped = false;
        for i in 0..bps.len().saturating_sub(1) {
            let (x, y) = (bps[i].clone(), bps[i + 1].clone());
            if (x.f - y.f).abs() > 1e-6 {
                continue; // f64 gap is far beyond its error
            }
            let out = certified_cmp(
                ladder,
                |prec| breakpoint(x.p, x.a, prec),
                |prec| breakpoint(y.p, y.a, prec),
            )?;
            let wrong = match out {
                CmpOutcome::Less => true,
                CmpOutcome::Greater => false,
                CmpOutcome::Indeterminate => x.p > y.p, // tie: smaller prime first
            };
            if wrong {
                bps.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    let mut out = Vec::with_capacity(bps.len());
    let mut n = FactoredNumber::one();
    // log n maintained incrementally: one certified ln per breakpoint
    let log_prec = 160u32;
    let mut log_acc = XReal::from_int(0, log_prec);
    for (i, bp) in bps.iter().enumerate() {
        n = n.mul_prime_power(bp.p, 1)?;
        let (llo, lhi) = ln_point(&crate::dyadic::Dyadic::from_int(bp.p as i64), log_prec)?;
        log_acc = log_acc.add(&XReal::from_endpoints(llo, lhi, log_prec), log_prec);
        let hi = if i == 0 { None } else { Some(bp.f) };
        let lo = bps.get(i + 1).map(|b| b.f);
        out.push(make_record(
            &n,
            AbundanceKind::Ca,
            lo,
            hi,
            Some((log_acc.lo_f64(), log_acc.hi_f64())),
            table,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::new(20_000)
    }

    fn values(records: &[AbundanceRecord], table: &PrimeTable) -> Vec<u64> {
        records
            .iter()
            .filter_map(|r| r.n_factored.to_u64(table).unwrap())
            .collect()
    }

    #[test]
    fn sa_bruteforce_matches_reference_list() {
        let t = table();
        let recs = enum_sa_bruteforce(1_000_000, &t).unwrap();
        // independently computed by a direct divisor-sum record scan
        let expect: Vec<u64> = vec![
            1, 2, 4, 6, 12, 24, 36, 48, 60, 120, 180, 240, 360, 720, 840, 1260, 1680, 2520,
            5040, 10080, 15120, 25200, 27720, 55440, 110880, 166320, 277200, 332640, 554400,
            665280, 720720,
        ];
        assert_eq!(values(&recs, &t), expect);
        for r in &recs {
            assert_eq!(r.kind, AbundanceKind::Sa);
            assert!(r.epsilon_lo.is_none() && r.epsilon_hi.is_none());
            assert!(r.log_n_lo <= r.log_n_hi);
        }
        // spot-check a known row
        let r10080 = recs
            .iter()
            .find(|r| r.n_factored.to_u64(&t).unwrap() == Some(10080))
            .unwrap();
        assert_eq!(r10080.p_k, Some(7));
        assert_eq!(r10080.q_v, Some(3));
        assert_eq!(r10080.sigma_ratio.as_deref(), Some("39/10"));
    }

    #[test]
    fn sa_structured_agrees_with_bruteforce() {
        let t = table();
        let brute = enum_sa_bruteforce(1_000_000, &t).unwrap();
        let structured = enum_sa_structured((1_000_000f64).ln(), &t).unwrap();
        let sv: Vec<u64> = values(&structured, &t)
            .into_iter()
            .filter(|&n| n <= 1_000_000)
            .collect();
        assert_eq!(values(&brute, &t), sv);
    }

    #[test]
    fn sa_structured_guards() {
        let t = table();
        assert!(matches!(
            enum_sa_structured(461.0, &t),
            Err(Error::LogLimitCap { .. })
        ));
        assert!(enum_sa_structured(0.0, &t).is_err());
        // theta over the whole table below the limit: shapes would be missed
        let tiny = PrimeTable::new(10);
        assert!(matches!(
            enum_sa_structured(10.0, &tiny),
            Err(Error::PrimeTableTooSmall { .. })
        ));
    }

    #[test]
    fn ca_prefix_matches_reference_list() {
        let t = table();
        let recs = enum_ca(43, &Ladder::default(), &t).unwrap();
        let vals: Vec<u64> = recs
            .iter()
            .filter_map(|r| r.n_factored.to_u64(&t).unwrap())
            .filter(|&v| v <= 10_000_000)
            .collect();
        assert_eq!(
            vals,
            vec![2, 6, 12, 60, 120, 360, 2520, 5040, 55440, 720720, 1441440, 4324320]
        );
        // divisibility chain and eps ordering
        for w in recs.windows(2) {
            let a = &w[0].n_factored;
            let b = &w[1].n_factored;
            assert_eq!(a.cmp_value(b, &t).unwrap(), Ordering::Less);
            assert!(w[0].epsilon_lo.unwrap() >= w[1].epsilon_lo.unwrap_or(f64::NEG_INFINITY));
        }
        assert!(recs[0].epsilon_hi.is_none());
        assert_eq!(recs[0].n_factored.to_u64(&t).unwrap(), Some(2));
        assert!(recs.last().unwrap().epsilon_lo.is_none());
        // first breakpoint below the top: F(3,1) = ln(4/3)/ln 3
        assert!((recs[0].epsilon_lo.unwrap() - 0.2618595071429148).abs() < 1e-12);
    }

    #[test]
    fn ca_records_have_sa_shape() {
        let t = table();
        let recs = enum_ca(97, &Ladder::default(), &t).unwrap();
        for r in &recs {
            let shape = r.n_factored.sa_shape();
            assert!(shape.contiguous && shape.non_increasing, "{}", r.n_factored);
        }
    }

    #[test]
    fn ca_guards() {
        let t = table();
        assert!(matches!(
            enum_ca(1_000_000, &Ladder::default(), &t),
            Err(Error::ExtendSieve { .. })
        ));
        assert!(enum_ca(1, &Ladder::default(), &t).is_err());
    }

    #[test]
    fn record_json_roundtrip() {
        let t = table();
        let recs = enum_ca(7, &Ladder::default(), &t).unwrap();
        let line = serde_json::to_string(&recs[1]).unwrap();
        assert!(line.contains("\"kind\":\"CA\""));
        let back: AbundanceRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back.n_factored, recs[1].n_factored);
    }
}
