//! Certified comparison verdicts and the precision escalation ladder.

use crate::error::Result;
use crate::xreal::XReal;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Outcome of a certified check. `Holds`/`Fails` are only ever emitted when
/// the comparing intervals are disjoint; `Indeterminate` means the escalation
/// ladder was exhausted with the intervals still overlapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Indeterminate => "Indeterminate",
            Verdict::NotApplicable => "NotApplicable",
        };
        f.write_str(s)
    }
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (NotApplicable, x) | (x, NotApplicable) => x,
            (Holds, Holds) => Holds,
        }
    }
}

/// Increasing list of precisions (bits) tried in order when a comparison is
/// not yet decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder(Vec<u32>);

impl Default for Ladder {
    fn default() -> Self {
        Ladder(vec![64, 256, 1024, 4096])
    }
}

impl Ladder {
    pub fn new(rungs: Vec<u32>) -> Result<Self> {
        if rungs.is_empty() {
            return Err(crate::error::Error::Domain("empty precision ladder".into()));
        }
        if !rungs.windows(2).all(|w| w[0] < w[1]) {
            return Err(crate::error::Error::Domain(
                "precision ladder must be strictly increasing".into(),
            ));
        }
        Ok(Ladder(rungs))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let rungs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| crate::error::Error::Parse(format!("bad precision {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ladder::new(rungs)
    }

    pub fn rungs(&self) -> &[u32] {
        &self.0
    }

    pub fn base(&self) -> u32 {
        self.0[0]
    }

    pub fn top(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn to_config_string(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Certified strict ordering of two expressions, recomputing both at each
/// ladder rung until the intervals separate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOutcome {
    Less,
    Greater,
    Indeterminate,
}

pub fn certified_cmp<A, B>(ladder: &Ladder, a: A, b: B) -> Result<CmpOutcome>
where
    A: Fn(u32) -> Result<XReal>,
    B: Fn(u32) -> Result<XReal>,
{
    Ok(certified_cmp_detailed(ladder, a, b)?.0)
}

/// Like [`certified_cmp`] but also returns the final pair of intervals, for
/// margin reporting.
pub fn certified_cmp_detailed<A, B>(
    ladder: &Ladder,
    a: A,
    b: B,
) -> Result<(CmpOutcome, XReal, XReal)>
where
    A: Fn(u32) -> Result<XReal>,
    B: Fn(u32) -> Result<XReal>,
{
    let mut last: Option<(XReal, XReal)> = None;
    for &prec in ladder.rungs() {
        let ia = a(prec)?;
        let ib = b(prec)?;
        match ia.cmp_certain(&ib) {
            Some(Ordering::Less) => return Ok((CmpOutcome::Less, ia, ib)),
            Some(Ordering::Greater) => return Ok((CmpOutcome::Greater, ia, ib)),
            _ => last = Some((ia, ib)),
        }
    }
    let (ia, ib) = last.unwrap();
    Ok((CmpOutcome::Indeterminate, ia, ib))
}

/// Verdict for the predicate `lhs >= rhs`, certified through strict interval
/// separation. Exact ties are the caller's business (use `QExact` when both
/// sides are rational).
pub fn verdict_ge<A, B>(ladder: &Ladder, lhs: A, rhs: B) -> Result<Verdict>
where
    A: Fn(u32) -> Result<XReal>,
    B: Fn(u32) -> Result<XReal>,
{
    Ok(match certified_cmp(ladder, lhs, rhs)? {
        CmpOutcome::Greater => Verdict::Holds,
        CmpOutcome::Less => Verdict::Fails,
        CmpOutcome::Indeterminate => Verdict::Indeterminate,
    })
}

/// Verdict for the predicate `lhs < rhs`.
pub fn verdict_lt<A, B>(ladder: &Ladder, lhs: A, rhs: B) -> Result<Verdict>
where
    A: Fn(u32) -> Result<XReal>,
    B: Fn(u32) -> Result<XReal>,
{
    Ok(match certified_cmp(ladder, lhs, rhs)? {
        CmpOutcome::Less => Verdict::Holds,
        CmpOutcome::Greater => Verdict::Fails,
        CmpOutcome::Indeterminate => Verdict::Indeterminate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_ordering() {
        let ladder = Ladder::default();
        let out = certified_cmp(
            &ladder,
            |p| Ok(XReal::from_int(1, p)),
            |p| Ok(XReal::from_int(2, p)),
        )
        .unwrap();
        assert_eq!(out, CmpOutcome::Less);
    }

    #[test]
    fn identical_expressions_exhaust_to_indeterminate() {
        let ladder = Ladder::default();
        let expr = |p: u32| XReal::from_int(42, p).ln(p);
        let out = certified_cmp(&ladder, expr, expr).unwrap();
        assert_eq!(out, CmpOutcome::Indeterminate);
    }

    #[test]
    fn ladder_validation() {
        assert!(Ladder::new(vec![]).is_err());
        assert!(Ladder::new(vec![64, 64]).is_err());
        assert!(Ladder::new(vec![256, 64]).is_err());
        assert_eq!(Ladder::parse("64,256").unwrap().rungs(), &[64, 256]);
    }

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(Holds.and(Holds), Holds);
        assert_eq!(Holds.and(Fails), Fails);
        assert_eq!(Indeterminate.and(Fails), Fails);
        assert_eq!(Holds.and(NotApplicable), Holds);
        assert_eq!(NotApplicable.and(NotApplicable), NotApplicable);
        assert_eq!(Holds.and(Indeterminate), Indeterminate);
    }
}
