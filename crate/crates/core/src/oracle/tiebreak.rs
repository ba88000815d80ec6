//! Enumeration over every complete tie-breaking of both sides.
//!
//! Every stable matching of an instance is stable in some strict
//! tie-breaking of it, and a matching stable in a tie-breaking is stable in
//! the original. So the union, over all tie-breakings, of the stable
//! matchings of each strict instance is exactly the stable set. Within one
//! strict instance all stable matchings give each hospital the same number
//! of residents, so one deferred-acceptance run per tie-breaking already
//! realises every attainable score.

use std::collections::HashSet;

use crate::instance::Instance;
use crate::solvers::StrictProfile;

/// One tie group of one agent's list.
#[derive(Clone, Debug)]
struct Tie {
    hospital_side: bool,
    agent: usize,
    group: usize,
    /// flattened offset of the group in the agent's list
    offset: usize,
}

/// Cycles through all tie-breakings with an odometer of permutations.
pub(crate) struct TieBreakings {
    ties: Vec<Tie>,
    resident_groups: Vec<Vec<Vec<usize>>>,
    hospital_groups: Vec<Vec<Vec<usize>>>,
    profile: StrictProfile,
}

fn factorial_sat(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Number of complete tie-breakings (saturating).
pub(crate) fn count_tiebreakings(inst: &Instance) -> u128 {
    let lists = (0..inst.num_residents())
        .map(|r| inst.resident_prefs(r))
        .chain((0..inst.num_hospitals()).map(|h| inst.hospital_prefs(h)));
    lists
        .flat_map(|l| l.groups().iter())
        .map(|g| factorial_sat(g.len()))
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

impl TieBreakings {
    pub fn new(inst: &Instance) -> Self {
        let mut resident_groups: Vec<Vec<Vec<usize>>> = (0..inst.num_residents())
            .map(|r| inst.resident_prefs(r).groups().to_vec())
            .collect();
        let mut hospital_groups: Vec<Vec<Vec<usize>>> = (0..inst.num_hospitals())
            .map(|h| inst.hospital_prefs(h).groups().to_vec())
            .collect();
        let mut ties = Vec::new();
        for (hospital_side, lists) in [(false, &mut resident_groups), (true, &mut hospital_groups)]
        {
            for (agent, groups) in lists.iter_mut().enumerate() {
                let mut offset = 0;
                for (group, g) in groups.iter_mut().enumerate() {
                    g.sort_unstable();
                    if g.len() > 1 {
                        ties.push(Tie {
                            hospital_side,
                            agent,
                            group,
                            offset,
                        });
                    }
                    offset += g.len();
                }
            }
        }
        let n = inst.num_residents();
        let m = inst.num_hospitals();
        let mut profile = StrictProfile {
            n,
            m,
            resident_lists: vec![Vec::new(); n],
            hospital_rank: vec![u32::MAX; n * m],
            capacity: inst.quotas().iter().map(|q| q.upper).collect(),
        };
        for (list, groups) in profile.resident_lists.iter_mut().zip(&resident_groups) {
            *list = groups.iter().flatten().copied().collect();
        }
        for (h, groups) in hospital_groups.iter().enumerate() {
            for (pos, &r) in groups.iter().flatten().enumerate() {
                profile.hospital_rank[h * n + r] = pos as u32;
            }
        }
        TieBreakings {
            ties,
            resident_groups,
            hospital_groups,
            profile,
        }
    }

    pub fn profile(&self) -> &StrictProfile {
        &self.profile
    }

    fn refresh(&mut self, t: usize) {
        let tie = &self.ties[t];
        if tie.hospital_side {
            let n = self.profile.n;
            let g = &self.hospital_groups[tie.agent][tie.group];
            for (i, &r) in g.iter().enumerate() {
                self.profile.hospital_rank[tie.agent * n + r] = (tie.offset + i) as u32;
            }
        } else {
            let g = &self.resident_groups[tie.agent][tie.group];
            self.profile.resident_lists[tie.agent][tie.offset..tie.offset + g.len()]
                .copy_from_slice(g);
        }
    }

    /// Moves to the next tie-breaking; `false` after the last one.
    pub fn advance(&mut self) -> bool {
        for t in 0..self.ties.len() {
            let tie = &self.ties[t];
            let group = if tie.hospital_side {
                &mut self.hospital_groups[tie.agent][tie.group]
            } else {
                &mut self.resident_groups[tie.agent][tie.group]
            };
            let carried = !next_permutation(group);
            self.refresh(t);
            if !carried {
                return true;
            }
        }
        false
    }
}

/// Lexicographic next permutation; on the last one, resets to sorted order
/// and returns `false`.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All stable matchings of a strict many-to-one profile.
///
/// Hospitals are cloned into `u(h)` unit-capacity copies ranked
/// consecutively by every resident; stable matchings of the cloned one-to-one
/// instance correspond one-to-one with those of the original. The lattice of
/// the cloned instance is walked from the resident-optimal matching by
/// repeatedly breaking one marriage and letting deferred acceptance resume.
pub(crate) struct LatticeWalker {
    men_lists: Vec<Vec<usize>>,
    clone_of: Vec<usize>,
    n: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct CloneMatching {
    // index into the man's list, per man
    wife_pos: Vec<Option<u32>>,
    husband: Vec<Option<u32>>,
}

impl LatticeWalker {
    pub fn new(p: &StrictProfile) -> Self {
        let mut base = Vec::with_capacity(p.m);
        let mut clone_of = Vec::new();
        for h in 0..p.m {
            base.push(clone_of.len());
            clone_of.extend(std::iter::repeat_n(h, p.capacity[h]));
        }
        let men_lists = p
            .resident_lists
            .iter()
            .map(|list| {
                list.iter()
                    .flat_map(|&h| base[h]..base[h] + p.capacity[h])
                    .collect()
            })
            .collect();
        LatticeWalker {
            men_lists,
            clone_of,
            n: p.n,
        }
    }

    #[inline]
    fn rank(&self, p: &StrictProfile, w: usize, man: usize) -> u32 {
        p.rank(self.clone_of[w], man)
    }

    fn man_optimal(&self, p: &StrictProfile) -> CloneMatching {
        let mut cm = CloneMatching {
            wife_pos: vec![None; self.n],
            husband: vec![None; self.clone_of.len()],
        };
        let mut next = vec![0usize; self.n];
        let mut free: Vec<usize> = (0..self.n).rev().collect();
        while let Some(man) = free.pop() {
            let list = &self.men_lists[man];
            while next[man] < list.len() {
                let pos = next[man];
                let w = list[pos];
                next[man] += 1;
                match cm.husband[w] {
                    None => {
                        cm.husband[w] = Some(man as u32);
                        cm.wife_pos[man] = Some(pos as u32);
                        break;
                    }
                    Some(cur) if self.rank(p, w, man) < self.rank(p, w, cur as usize) => {
                        cm.husband[w] = Some(man as u32);
                        cm.wife_pos[man] = Some(pos as u32);
                        cm.wife_pos[cur as usize] = None;
                        free.push(cur as usize);
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
        cm
    }

    fn break_marriage(
        &self,
        p: &StrictProfile,
        base: &CloneMatching,
        i: usize,
    ) -> Option<CloneMatching> {
        let start = base.wife_pos[i]? as usize;
        let w = self.men_lists[i][start];
        let threshold = self.rank(p, w, i);
        let mut cm = base.clone();
        cm.husband[w] = None;
        cm.wife_pos[i] = None;
        let mut man = i;
        let mut next = start + 1;
        loop {
            let list = &self.men_lists[man];
            if next >= list.len() {
                return None;
            }
            let w2 = list[next];
            if w2 == w {
                if self.rank(p, w, man) < threshold {
                    cm.husband[w] = Some(man as u32);
                    cm.wife_pos[man] = Some(next as u32);
                    return Some(cm);
                }
                next += 1;
                continue;
            }
            match cm.husband[w2] {
                // a woman free in one stable matching is free in all of them
                None => return None,
                Some(cur) if self.rank(p, w2, man) < self.rank(p, w2, cur as usize) => {
                    let cur = cur as usize;
                    let cur_pos = cm.wife_pos[cur].expect("married") as usize;
                    cm.husband[w2] = Some(man as u32);
                    cm.wife_pos[man] = Some(next as u32);
                    cm.wife_pos[cur] = None;
                    man = cur;
                    next = cur_pos + 1;
                }
                Some(_) => next += 1,
            }
        }
    }

    fn to_assignment(&self, cm: &CloneMatching) -> Vec<Option<usize>> {
        cm.wife_pos
            .iter()
            .enumerate()
            .map(|(man, pos)| pos.map(|pos| self.clone_of[self.men_lists[man][pos as usize]]))
            .collect()
    }

    /// Calls `emit` once per stable matching (resident -> hospital).
    pub fn for_each_stable(&self, p: &StrictProfile, mut emit: impl FnMut(Vec<Option<usize>>)) {
        let root = self.man_optimal(p);
        let mut seen: HashSet<CloneMatching> = HashSet::new();
        let mut stack = vec![root.clone()];
        seen.insert(root);
        while let Some(cm) = stack.pop() {
            for i in 0..self.n {
                if let Some(next) = self.break_marriage(p, &cm, i) {
                    if !seen.contains(&next) {
                        seen.insert(next.clone());
                        stack.push(next);
                    }
                }
            }
            emit(self.to_assignment(&cm));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{InstanceBuilder, Matching};
    use crate::verify;

    #[test]
    fn permutation_odometer_visits_all() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, vec![0, 1, 2]);
    }

    #[test]
    fn counts_tiebreakings_of_both_sides() {
        let inst = InstanceBuilder::new()
            .resident("r1", vec![vec!["h1", "h2"]])
            .resident("r2", vec![vec!["h1"]])
            .resident("r3", vec![vec!["h1"]])
            .hospital("h1", 0, 1, vec![vec!["r1", "r2", "r3"]])
            .hospital("h2", 0, 1, vec![vec!["r1"]])
            .build()
            .unwrap();
        assert_eq!(count_tiebreakings(&inst), 2 * 6);
        let mut tb = TieBreakings::new(&inst);
        let mut seen = 1;
        while tb.advance() {
            seen += 1;
        }
        assert_eq!(seen, 12);
    }

    #[test]
    fn lattice_of_a_two_by_two_cycle() {
        // r1: h1 h2, r2: h2 h1; h1: r2 r1, h2: r1 r2 -> two stable matchings
        let inst = InstanceBuilder::new()
            .resident("r1", vec![vec!["h1"], vec!["h2"]])
            .resident("r2", vec![vec!["h2"], vec!["h1"]])
            .hospital("h1", 1, 1, vec![vec!["r2"], vec!["r1"]])
            .hospital("h2", 1, 1, vec![vec!["r1"], vec!["r2"]])
            .build()
            .unwrap();
        let p = StrictProfile::from_instance(&inst).unwrap();
        let mut all = Vec::new();
        LatticeWalker::new(&p).for_each_stable(&p, |a| all.push(a));
        all.sort();
        assert_eq!(all, vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]]);
        for a in all {
            assert!(verify::is_stable(&inst, &Matching::from_assignment(a)).unwrap());
        }
    }
}
