//! Tie-breaking and resident-oriented deferred acceptance: the naive baseline.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, PreferenceList};
use crate::solvers::policy::TieBreakPolicy;

/// Strict preferences in flat form, the working representation of
/// deferred acceptance and of the enumeration oracle.
#[derive(Clone, Debug)]
pub(crate) struct StrictProfile {
    pub n: usize,
    pub m: usize,
    pub resident_lists: Vec<Vec<usize>>,
    /// `hospital_rank[h * n + r]`, `u32::MAX` when unacceptable.
    pub hospital_rank: Vec<u32>,
    pub capacity: Vec<usize>,
}

impl StrictProfile {
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        if inst.has_ties() {
            return Err(Error::TiesPresent);
        }
        let n = inst.num_residents();
        let m = inst.num_hospitals();
        let mut hospital_rank = vec![u32::MAX; n * m];
        for h in 0..m {
            for (pos, r) in inst.hospital_prefs(h).iter().enumerate() {
                hospital_rank[h * n + r] = pos as u32;
            }
        }
        Ok(StrictProfile {
            n,
            m,
            resident_lists: (0..n)
                .map(|r| inst.resident_prefs(r).iter().collect())
                .collect(),
            hospital_rank,
            capacity: inst.quotas().iter().map(|q| q.upper).collect(),
        })
    }

    #[inline]
    pub fn rank(&self, h: usize, r: usize) -> u32 {
        self.hospital_rank[h * self.n + r]
    }

    /// Resident-optimal stable matching with capacities `capacity`.
    pub fn deferred_acceptance(&self) -> Vec<Option<usize>> {
        let mut next = vec![0usize; self.n];
        let mut held: Vec<Vec<usize>> = vec![Vec::new(); self.m];
        let mut matched = vec![None; self.n];
        let mut free: Vec<usize> = (0..self.n).rev().collect();
        while let Some(r) = free.pop() {
            let list = &self.resident_lists[r];
            if next[r] >= list.len() {
                continue;
            }
            let h = list[next[r]];
            next[r] += 1;
            if held[h].len() < self.capacity[h] {
                held[h].push(r);
                matched[r] = Some(h);
                continue;
            }
            let (pos, &worst) = held[h]
                .iter()
                .enumerate()
                .max_by_key(|(_, &x)| self.rank(h, x))
                .expect("capacity >= 1");
            if self.rank(h, r) < self.rank(h, worst) {
                held[h][pos] = r;
                matched[r] = Some(h);
                matched[worst] = None;
                free.push(worst);
            } else {
                free.push(r);
            }
        }
        matched
    }
}

/// Resident-oriented deferred acceptance with capacities `u(h)`; lower
/// quotas play no role during the run.
pub fn gale_shapley(instance: &Instance) -> Result<Matching> {
    let profile = StrictProfile::from_instance(instance)?;
    Ok(Matching::from_assignment(profile.deferred_acceptance()))
}

/// Replaces every tie by a strict order.
///
/// Ties in hospital lists follow the policy's resident priority. Ties in
/// resident lists follow hospital index for `ByIndex` and `Explicit`, and a
/// seeded hospital permutation for `Seeded`.
pub fn break_ties(instance: &Instance, policy: &TieBreakPolicy) -> Result<Instance> {
    let resident_priority = policy.ranks(instance.num_residents())?;
    let hospital_priority: Vec<usize> = match policy {
        TieBreakPolicy::Seeded(seed) => {
            let mut perm: Vec<usize> = (0..instance.num_hospitals()).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15));
            let mut rank = vec![0; perm.len()];
            for (pos, h) in perm.into_iter().enumerate() {
                rank[h] = pos;
            }
            rank
        }
        _ => (0..instance.num_hospitals()).collect(),
    };
    let flatten = |list: &PreferenceList, key: &[usize]| {
        PreferenceList::strict(list.groups().iter().flat_map(|g| {
            let mut g = g.clone();
            g.sort_by_key(|&a| key[a]);
            g
        }))
    };
    let residents = (0..instance.num_residents())
        .map(|r| flatten(instance.resident_prefs(r), &hospital_priority))
        .collect();
    let hospitals = (0..instance.num_hospitals())
        .map(|h| flatten(instance.hospital_prefs(h), &resident_priority))
        .collect();
    instance.with_prefs(residents, hospitals)
}

/// Break ties by `policy`, then run resident-oriented deferred acceptance.
pub fn baseline(instance: &Instance, policy: &TieBreakPolicy) -> Result<Matching> {
    gale_shapley(&break_ties(instance, policy)?)
}
