//! Empirical audits of four structural claims about superabundant (SA) and
//! colossally abundant (CA) numbers, run over enumerated record streams.
//!
//! Audited claims, for an SA/CA number v with largest prime factor p_k and
//! q_v the largest prime whose square divides v:
//!
//! * L1 (v > 36): the exponent pattern is non-increasing with last exponent 1.
//! * L3 (v > 6, p_k > 20000): theta(p_k) < log v - 0.998 q_v.
//! * L4 (v > 36, p_k >= 1530): q_v^2 in (p_k, 2 p_k), checked exactly.
//! * L5 (p_k > 20000): theta(p_k) <= log v < theta(next prime after p_k),
//!   i.e. v lies in the primorial window [N_k, N_{k+1}).
//!
//! L1 and L4 are exact integer checks. L3 and L5 compare certified intervals
//! through the precision ladder. L5 is the interesting one: L3 already forces
//! log v to exceed theta(p_k) by almost q_v ~ sqrt(p_k), which is far more
//! than the window width log p_{k+1}, so the two claims cannot both hold on
//! the same data.

use crate::abundance::AbundanceRecord;
use crate::error::{Error, Result};
use crate::factored::FactoredNumber;
use crate::primes::{next_prime, PrimeTable, RunningTheta};
use crate::verdict::{certified_cmp, CmpOutcome, Ladder, Verdict};
use crate::xreal::{ln_point, XReal};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaId {
    L1,
    L3,
    L4,
    L5,
}

impl std::str::FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "L1" | "l1" => Ok(LemmaId::L1),
            "3" | "L3" | "l3" => Ok(LemmaId::L3),
            "4" | "L4" | "l4" => Ok(LemmaId::L4),
            "5" | "L5" | "l5" => Ok(LemmaId::L5),
            other => Err(Error::Parse(format!(
                "unknown lemma {other:?} (expected 1, 3, 4 or 5)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaFailure {
    pub n_factored: FactoredNumber,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaAuditReport {
    pub lemma: LemmaId,
    pub total: u64,
    pub applicable: u64,
    pub holds: u64,
    pub fails: u64,
    pub indeterminate: u64,
    /// First failures, capped.
    pub failures: Vec<LemmaFailure>,
    /// L4 only: smallest observed distance from q_v^2 to either end of
    /// (p_k, 2 p_k).
    pub min_margin: Option<u64>,
}

impl LemmaAuditReport {
    pub fn counts_ok(&self) -> bool {
        self.applicable <= self.total
            && self.holds + self.fails + self.indeterminate == self.applicable
    }
}

const MAX_REPORTED_FAILURES: usize = 25;

/// v > bound, decided exactly: small values via u64, anything too large for
/// u64 is certainly above any bound used here.
fn value_above(r: &AbundanceRecord, bound: u64, table: &PrimeTable) -> Result<bool> {
    Ok(match r.n_factored.to_u64(table)? {
        Some(v) => v > bound,
        None => true,
    })
}

/// Snapshot theta accumulators at each needed prime, in one forward pass.
fn theta_snapshots(
    needed: &[u64],
    bits: u32,
    table: &PrimeTable,
) -> Result<BTreeMap<u64, RunningTheta>> {
    let mut out = BTreeMap::new();
    let max = match needed.last() {
        Some(&m) => m,
        None => return Ok(out),
    };
    table.require(max)?;
    let mut acc = RunningTheta::new(bits);
    let mut want = needed.iter().copied().peekable();
    for &p in table.range(2, max) {
        acc.push_prime(p);
        while want.peek() == Some(&p) {
            out.insert(p, acc.clone());
            want.next();
        }
    }
    Ok(out)
}

pub fn audit_lemma(
    lemma: LemmaId,
    records: &[AbundanceRecord],
    ladder: &Ladder,
    table: &PrimeTable,
) -> Result<LemmaAuditReport> {
    let mut report = LemmaAuditReport {
        lemma,
        total: records.len() as u64,
        applicable: 0,
        holds: 0,
        fails: 0,
        indeterminate: 0,
        failures: Vec::new(),
        min_margin: None,
    };

    // theta snapshots for the interval-based lemmas
    let snapshots = match lemma {
        LemmaId::L3 | LemmaId::L5 => {
            let mut needed: Vec<u64> = records
                .iter()
                .filter_map(|r| r.p_k)
                .filter(|&p| p > 20_000)
                .collect();
            needed.sort_unstable();
            needed.dedup();
            theta_snapshots(&needed, ladder.top() + 128, table)?
        }
        _ => BTreeMap::new(),
    };

    for r in records {
        let verdict = match lemma {
            LemmaId::L1 => {
                if !value_above(r, 36, table)? {
                    continue;
                }
                let shape = r.n_factored.sa_shape();
                if shape.all() {
                    Verdict::Holds
                } else {
                    push_failure(
                        &mut report,
                        r,
                        format!(
                            "shape broken: contiguous={} non_increasing={} last_exponent_one={}",
                            shape.contiguous, shape.non_increasing, shape.last_exponent_one
                        ),
                    );
                    Verdict::Fails
                }
            }
            LemmaId::L4 => {
                let p_k = match r.p_k {
                    Some(p) if p >= 1530 => p,
                    _ => continue,
                };
                if !value_above(r, 36, table)? {
                    continue;
                }
                match r.q_v {
                    None => {
                        push_failure(&mut report, r, "no square prime divisor".into());
                        Verdict::Fails
                    }
                    Some(q) => {
                        let q2 = q * q;
                        if q2 > p_k && q2 < 2 * p_k {
                            let margin = (q2 - p_k).min(2 * p_k - q2);
                            report.min_margin =
                                Some(report.min_margin.map_or(margin, |m| m.min(margin)));
                            Verdict::Holds
                        } else {
                            push_failure(
                                &mut report,
                                r,
                                format!("q_v = {q}, q_v^2 = {q2} outside ({p_k}, {})", 2 * p_k),
                            );
                            Verdict::Fails
                        }
                    }
                }
            }
            LemmaId::L3 => {
                let p_k = match r.p_k {
                    Some(p) if p > 20_000 => p,
                    _ => continue,
                };
                if !value_above(r, 6, table)? {
                    continue;
                }
                let q = match r.q_v {
                    Some(q) => q,
                    None => {
                        push_failure(&mut report, r, "no square prime divisor".into());
                        report.applicable += 1;
                        report.fails += 1;
                        continue;
                    }
                };
                let snap = snapshots.get(&p_k).expect("snapshot prepared");
                // theta(p_k) < log v - (499/500) q_v
                let out = certified_cmp(
                    ladder,
                    |prec| snap.theta(prec),
                    |prec| {
                        let logv = r.n_factored.log_n(prec, table)?;
                        let qv = XReal::from_ratio(
                            &(BigInt::from(499) * BigInt::from(q)),
                            &BigInt::from(500),
                            prec,
                        );
                        Ok(logv.sub(&qv, prec))
                    },
                )?;
                match out {
                    CmpOutcome::Less => Verdict::Holds,
                    CmpOutcome::Greater => {
                        push_failure(
                            &mut report,
                            r,
                            format!("theta({p_k}) >= log v - 0.998 * {q}"),
                        );
                        Verdict::Fails
                    }
                    CmpOutcome::Indeterminate => Verdict::Indeterminate,
                }
            }
            LemmaId::L5 => {
                let p_k = match r.p_k {
                    Some(p) if p > 20_000 => p,
                    _ => continue,
                };
                let snap = snapshots.get(&p_k).expect("snapshot prepared");
                let p_next = next_prime(p_k);
                // theta(p_k) <= log v
                let lower = certified_cmp(
                    ladder,
                    |prec| snap.theta(prec),
                    |prec| r.n_factored.log_n(prec, table),
                )?;
                // log v < theta(p_k) + ln p_next
                let upper = certified_cmp(
                    ladder,
                    |prec| r.n_factored.log_n(prec, table),
                    |prec| {
                        let (lo, hi) = ln_point(&crate::dyadic::Dyadic::from_int(p_next as i64), prec)?;
                        let lnp = XReal::from_endpoints(lo, hi, prec);
                        Ok(snap.theta(prec)?.add(&lnp, prec))
                    },
                )?;
                let v_lower = match lower {
                    CmpOutcome::Less => Verdict::Holds,
                    CmpOutcome::Greater => Verdict::Fails,
                    CmpOutcome::Indeterminate => Verdict::Indeterminate,
                };
                let v_upper = match upper {
                    CmpOutcome::Less => Verdict::Holds,
                    CmpOutcome::Greater => Verdict::Fails,
                    CmpOutcome::Indeterminate => Verdict::Indeterminate,
                };
                let v = v_lower.and(v_upper);
                if v == Verdict::Fails {
                    let side = if v_lower == Verdict::Fails {
                        "v < N_k"
                    } else {
                        "v >= N_{k+1}"
                    };
                    push_failure(
                        &mut report,
                        r,
                        format!("{side}: log v outside [theta({p_k}), theta({p_next}))"),
                    );
                }
                v
            }
        };
        report.applicable += 1;
        match verdict {
            Verdict::Holds => report.holds += 1,
            Verdict::Fails => report.fails += 1,
            _ => report.indeterminate += 1,
        }
    }
    debug_assert!(report.counts_ok());
    Ok(report)
}

fn push_failure(report: &mut LemmaAuditReport, r: &AbundanceRecord, detail: String) {
    if report.failures.len() < MAX_REPORTED_FAILURES {
        report.failures.push(LemmaFailure {
            n_factored: r.n_factored.clone(),
            detail,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abundance::{enum_ca, enum_sa_bruteforce, AbundanceRecord};
    use std::sync::OnceLock;

    fn table() -> &'static PrimeTable {
        static T: OnceLock<PrimeTable> = OnceLock::new();
        T.get_or_init(|| PrimeTable::new(25_000))
    }

    // the CA enumeration past p = 20000 is the expensive shared fixture
    fn ca_records() -> &'static [AbundanceRecord] {
        static R: OnceLock<Vec<AbundanceRecord>> = OnceLock::new();
        R.get_or_init(|| enum_ca(22_000, &Ladder::default(), table()).unwrap())
    }

    #[test]
    fn lemma1_holds_on_sa_records() {
        let t = table();
        let recs = enum_sa_bruteforce(1_000_000, t).unwrap();
        let rep = audit_lemma(LemmaId::L1, &recs, &Ladder::default(), t).unwrap();
        assert!(rep.counts_ok());
        assert_eq!(rep.fails, 0);
        assert_eq!(rep.indeterminate, 0);
        // 36 itself and smaller records are excluded by the v > 36 gate
        assert!(rep.applicable < rep.total);
        assert!(rep.applicable > 10);
    }

    #[test]
    fn lemma4_exact_window() {
        let t = table();
        let recs = ca_records();
        let rep = audit_lemma(LemmaId::L4, recs, &Ladder::default(), t).unwrap();
        assert!(rep.counts_ok());
        assert_eq!(rep.fails, 0, "failures: {:?}", rep.failures);
        assert!(rep.applicable > 100);
        assert!(rep.min_margin.is_some());
    }

    #[test]
    fn lemma3_holds_on_ca_records() {
        let t = table();
        let recs = ca_records();
        let rep = audit_lemma(LemmaId::L3, recs, &Ladder::default(), t).unwrap();
        assert!(rep.counts_ok());
        assert!(rep.applicable > 50);
        assert_eq!(rep.fails, 0, "failures: {:?}", rep.failures);
        assert_eq!(rep.indeterminate, 0);
    }

    #[test]
    fn lemma5_fails_on_ca_records() {
        // The primorial-window claim contradicts the excess forced by the
        // theta gap audit: log v - theta(p_k) is about q_v, far beyond
        // log p_{k+1}. Every applicable record lands above the window.
        let t = table();
        let recs = ca_records();
        let rep = audit_lemma(LemmaId::L5, recs, &Ladder::default(), t).unwrap();
        assert!(rep.counts_ok());
        assert!(rep.applicable > 50);
        assert_eq!(rep.holds, 0);
        assert_eq!(rep.fails, rep.applicable);
        assert!(rep.failures[0].detail.contains("v >= N_{k+1}"));
    }

    #[test]
    fn small_records_not_applicable() {
        let t = table();
        let recs = enum_sa_bruteforce(1000, t).unwrap();
        for lemma in [LemmaId::L3, LemmaId::L4, LemmaId::L5] {
            let rep = audit_lemma(lemma, &recs, &Ladder::default(), t).unwrap();
            assert_eq!(rep.applicable, 0, "{lemma:?}");
            assert!(rep.total > 0);
        }
    }

    #[test]
    fn lemma_id_parsing() {
        assert_eq!("1".parse::<LemmaId>().unwrap(), LemmaId::L1);
        assert_eq!("L5".parse::<LemmaId>().unwrap(), LemmaId::L5);
        assert!("2".parse::<LemmaId>().is_err());
    }
}
