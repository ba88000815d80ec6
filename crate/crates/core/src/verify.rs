//! Exact scoring, stability and structural checks on given matchings.
//!
//! Every entry point first checks feasibility (pairs drawn from E, upper
//! quotas respected) and fails with [`Error::InfeasibleMatching`] otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching};
use crate::score::Score;

/// Why the resident side of a blocking pair wants to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "hospital")]
pub enum ResidentReason {
    Unmatched,
    PrefersOver(usize),
}

/// Why the hospital side of a blocking pair would take the resident.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "resident")]
pub enum HospitalReason {
    Undersubscribed,
    PrefersOver(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingPair {
    pub resident: usize,
    pub hospital: usize,
    pub resident_reason: ResidentReason,
    pub hospital_reason: HospitalReason,
}

/// A length-3 augmenting path `(r1, h1, r2, h2)`: `r1` unmatched,
/// `(r2, h1)` in M, `(r1, h1)` and `(r2, h2)` outside M, `h2` deficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugPath3 {
    pub r1: usize,
    pub h1: usize,
    pub r2: usize,
    pub h2: usize,
}

/// Which implication of the tie-priority properties failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriorityRule {
    /// `l(h) > l(h')` but `h'` deficient.
    LowerQuotaOrder,
    /// `|M(h)| > l(h)` but `h'` deficient.
    Overfilled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PriorityViolation {
    pub resident: usize,
    pub assigned: usize,
    pub tied: usize,
    pub rule: PriorityRule,
}

/// Checks that every pair is acceptable and no hospital exceeds its upper
/// quota. Returns the loads |M(h)|.
pub fn check_feasible(instance: &Instance, matching: &Matching) -> Result<Vec<usize>> {
    let n = instance.num_residents();
    let m = instance.num_hospitals();
    if matching.num_residents() != n {
        return Err(Error::InfeasibleMatching(format!(
            "matching covers {} residents, instance has {n}",
            matching.num_residents()
        )));
    }
    for (r, h) in matching.pairs() {
        if h >= m {
            return Err(Error::InfeasibleMatching(format!(
                "hospital #{h} out of range"
            )));
        }
        if !instance.is_acceptable(r, h) {
            return Err(Error::InfeasibleMatching(format!(
                "({}, {}) is not an acceptable pair",
                instance.resident_name(r),
                instance.hospital_name(h)
            )));
        }
    }
    let loads = matching.loads(m);
    for (h, &load) in loads.iter().enumerate() {
        if load > instance.quota(h).upper {
            return Err(Error::InfeasibleMatching(format!(
                "{} holds {load} residents, upper quota is {}",
                instance.hospital_name(h),
                instance.quota(h).upper
            )));
        }
    }
    Ok(loads)
}

fn hospital_score(lower: usize, load: usize) -> Score {
    if lower == 0 || load >= lower {
        Score::one()
    } else {
        Score::new(load as i64, lower as i64)
    }
}

/// min{1, |M(h)| / l(h)}, with 1 when l(h) = 0.
pub fn score_hospital(instance: &Instance, matching: &Matching, h: usize) -> Result<Score> {
    let loads = check_feasible(instance, matching)?;
    if h >= instance.num_hospitals() {
        return Err(Error::InvalidArgument(format!(
            "hospital #{h} out of range"
        )));
    }
    Ok(hospital_score(instance.quota(h).lower, loads[h]))
}

/// Total score: the sum of all hospital scores.
pub fn score(instance: &Instance, matching: &Matching) -> Result<Score> {
    let loads = check_feasible(instance, matching)?;
    Ok(score_from_loads(instance, &loads))
}

pub(crate) fn score_from_loads(instance: &Instance, loads: &[usize]) -> Score {
    // Sum over distinct lower quotas keeps the rational arithmetic small.
    let mut full = 0i64;
    let mut partial: Vec<(usize, i64)> = Vec::new();
    for (h, &load) in loads.iter().enumerate() {
        let lower = instance.quota(h).lower;
        if lower == 0 || load >= lower {
            full += 1;
        } else if load > 0 {
            match partial.iter_mut().find(|(l, _)| *l == lower) {
                Some((_, s)) => *s += load as i64,
                None => partial.push((lower, load as i64)),
            }
        }
    }
    partial
        .into_iter()
        .map(|(lower, sum)| Score::new(sum, lower as i64))
        .fold(Score::integer(full), |a, b| a + b)
}

/// All blocking pairs, ordered by resident then hospital.
pub fn blocking_pairs(instance: &Instance, matching: &Matching) -> Result<Vec<BlockingPair>> {
    let loads = check_feasible(instance, matching)?;
    Ok(blocking_pairs_unchecked(instance, matching, &loads, false))
}

pub(crate) fn blocking_pairs_unchecked(
    instance: &Instance,
    matching: &Matching,
    loads: &[usize],
    first_only: bool,
) -> Vec<BlockingPair> {
    let m = instance.num_hospitals();
    // worst assigned resident per hospital (largest rank), if any
    let mut worst: Vec<Option<(u32, usize)>> = vec![None; m];
    for (r, h) in matching.pairs() {
        let rank = instance.hospital_rank(h, r).expect("feasible");
        if worst[h].is_none_or(|(w, _)| rank > w) {
            worst[h] = Some((rank, r));
        }
    }
    let mut out = Vec::new();
    for r in 0..instance.num_residents() {
        let current = matching.hospital_of(r);
        let current_rank = current.map(|h| instance.resident_rank(r, h).expect("feasible"));
        for h in instance
            .resident_prefs(r)
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
        {
            let rank = instance.resident_rank(r, h).expect("listed");
            let resident_reason = match (current, current_rank) {
                (None, _) => ResidentReason::Unmatched,
                (Some(c), Some(cr)) if rank < cr => ResidentReason::PrefersOver(c),
                _ => continue,
            };
            let hospital_reason = if loads[h] < instance.quota(h).upper {
                HospitalReason::Undersubscribed
            } else {
                match worst[h] {
                    Some((w, wr)) if instance.hospital_rank(h, r).expect("mutual") < w => {
                        HospitalReason::PrefersOver(wr)
                    }
                    _ => continue,
                }
            };
            out.push(BlockingPair {
                resident: r,
                hospital: h,
                resident_reason,
                hospital_reason,
            });
            if first_only {
                return out;
            }
        }
    }
    out
}

pub fn is_stable(instance: &Instance, matching: &Matching) -> Result<bool> {
    let loads = check_feasible(instance, matching)?;
    Ok(blocking_pairs_unchecked(instance, matching, &loads, true).is_empty())
}

/// Finds a length-3 M-augmenting path whose two outer edges lie in `other`.
pub fn find_aug_path3(
    instance: &Instance,
    matching: &Matching,
    other: &Matching,
) -> Result<Option<AugPath3>> {
    let loads = check_feasible(instance, matching)?;
    check_feasible(instance, other)?;
    for r1 in 0..instance.num_residents() {
        if matching.hospital_of(r1).is_some() {
            continue;
        }
        let Some(h1) = other.hospital_of(r1) else {
            continue;
        };
        for r2 in matching.residents_of(h1) {
            let Some(h2) = other.hospital_of(r2) else {
                continue;
            };
            if h2 != h1 && loads[h2] < instance.quota(h2).lower {
                return Ok(Some(AugPath3 { r1, h1, r2, h2 }));
            }
        }
    }
    Ok(None)
}

/// For every `r` with `M(r) = h` and every `h' =_r h`:
/// (i) `l(h) > l(h')` implies `|M(h')| >= l(h')`, and
/// (ii) `|M(h)| > l(h)` implies `|M(h')| >= l(h')`.
pub fn check_priority_properties(
    instance: &Instance,
    matching: &Matching,
) -> Result<Vec<PriorityViolation>> {
    let loads = check_feasible(instance, matching)?;
    let mut out = Vec::new();
    for (r, h) in matching.pairs() {
        let rank = instance.resident_rank(r, h).expect("feasible") as usize;
        let tie = &instance.resident_prefs(r).groups()[rank];
        for &other in tie.iter().filter(|&&o| o != h) {
            let deficient = loads[other] < instance.quota(other).lower;
            if !deficient {
                continue;
            }
            if instance.quota(h).lower > instance.quota(other).lower {
                out.push(PriorityViolation {
                    resident: r,
                    assigned: h,
                    tied: other,
                    rule: PriorityRule::LowerQuotaOrder,
                });
            }
            if loads[h] > instance.quota(h).lower {
                out.push(PriorityViolation {
                    resident: r,
                    assigned: h,
                    tied: other,
                    rule: PriorityRule::Overfilled,
                });
            }
        }
    }
    Ok(out)
}
