//! Triple Proposal and Double Proposal.
//!
//! Residents propose along their lists, trying every hospital of the head
//! tie once before proposing to any of them again, and preferring the
//! smallest lower quota. A hospital below its lower quota accepts outright.
//! Otherwise it first rejects some resident it has never rejected before
//! (the proposer included), regardless of preference; only when everybody in
//! `M(h) + r` has already been rejected once does it behave like an ordinary
//! deferred-acceptance hospital with capacity `u(h)`, and only then does the
//! rejected resident delete `h` from her list.
//!
//! When a resident exhausts her list in state 0 her list is restored and she
//! enters state 1, in which she displaces tied residents still in state 0.
//! Exhausting the list in state 1 makes her inactive. Double Proposal is the
//! same procedure without the state-1 round.

use std::collections::VecDeque;

use crate::error::Result;
use crate::instance::{Instance, Matching};
use crate::solvers::policy::TieBreakPolicy;
use crate::solvers::trace::{Event, Trace};

const INACTIVE: u8 = 2;

/// Mutable state of one run. Private to the run; instances stay shared.
struct Run<'a> {
    inst: &'a Instance,
    m: usize,
    priority: Vec<usize>,
    recover_lists: bool,
    state: Vec<u8>,
    // dense [r * m + h]
    proposals: Vec<u8>,
    rejections: Vec<u8>,
    // working lists: alive flag per entry of the original list, head group cursor
    alive: Vec<Vec<bool>>,
    alive_count: Vec<usize>,
    head: Vec<usize>,
    assigned: Vec<Vec<usize>>,
    matched: Vec<Option<usize>>,
    queue: VecDeque<usize>,
    trace: Trace,
}

impl<'a> Run<'a> {
    fn new(inst: &'a Instance, policy: &TieBreakPolicy, recover_lists: bool) -> Result<Self> {
        let n = inst.num_residents();
        let m = inst.num_hospitals();
        let order = policy.order(n)?;
        let mut priority = vec![0; n];
        for (pos, &r) in order.iter().enumerate() {
            priority[r] = pos;
        }
        let alive: Vec<Vec<bool>> = (0..n)
            .map(|r| vec![true; inst.resident_prefs(r).len()])
            .collect();
        let alive_count: Vec<usize> = alive.iter().map(Vec::len).collect();
        let state = alive_count
            .iter()
            .map(|&c| if c == 0 { INACTIVE } else { 0 })
            .collect();
        let queue = order.into_iter().filter(|&r| alive_count[r] > 0).collect();
        Ok(Run {
            inst,
            m,
            priority,
            recover_lists,
            state,
            proposals: vec![0; n * m],
            rejections: vec![0; n * m],
            alive,
            alive_count,
            head: vec![0; n],
            assigned: vec![Vec::new(); m],
            matched: vec![None; n],
            queue,
            trace: Trace::default(),
        })
    }

    /// Entries of `r`'s current head tie as (entry index, hospital).
    fn head_tie(&mut self, r: usize) -> Vec<(usize, usize)> {
        let groups = self.inst.resident_prefs(r).groups();
        let mut offset: usize = groups[..self.head[r]].iter().map(Vec::len).sum();
        while self.head[r] < groups.len() {
            let group = &groups[self.head[r]];
            let live: Vec<(usize, usize)> = group
                .iter()
                .enumerate()
                .filter(|(i, _)| self.alive[r][offset + i])
                .map(|(i, &h)| (offset + i, h))
                .collect();
            if !live.is_empty() {
                return live;
            }
            offset += group.len();
            self.head[r] += 1;
        }
        unreachable!("head_tie called on an exhausted list")
    }

    fn choose_hospital(&mut self, r: usize) -> usize {
        let tie = self.head_tie(r);
        let inst = self.inst;
        let key = |h: &usize| (inst.quota(*h).lower, *h);
        let fresh = tie
            .iter()
            .map(|&(_, h)| h)
            .filter(|&h| self.proposals[r * self.m + h] == 0)
            .min_by_key(key);
        fresh.unwrap_or_else(|| {
            tie.iter()
                .map(|&(_, h)| h)
                .min_by_key(key)
                .expect("nonempty tie")
        })
    }

    fn entry_of(&self, r: usize, h: usize) -> usize {
        let rank = self.inst.resident_rank(r, h).expect("listed") as usize;
        let groups = self.inst.resident_prefs(r).groups();
        let offset: usize = groups[..rank].iter().map(Vec::len).sum();
        offset
            + groups[rank]
                .iter()
                .position(|&x| x == h)
                .expect("in its group")
    }

    fn delete(&mut self, r: usize, h: usize) {
        let e = self.entry_of(r, h);
        if std::mem::replace(&mut self.alive[r][e], false) {
            self.alive_count[r] -= 1;
        }
        self.trace.push(Event::Delete {
            resident: r,
            hospital: h,
        });
    }

    fn recover(&mut self, r: usize) {
        self.state[r] += 1;
        if !self.recover_lists {
            self.state[r] = INACTIVE;
        }
        if self.state[r] < INACTIVE {
            self.alive[r].iter_mut().for_each(|a| *a = true);
            self.alive_count[r] = self.alive[r].len();
            self.head[r] = 0;
        }
        self.trace.push(Event::State {
            resident: r,
            state: self.state[r],
        });
    }

    fn accept(&mut self, r: usize, h: usize) {
        self.assigned[h].push(r);
        self.matched[r] = Some(h);
        self.trace.push(Event::Accept {
            resident: r,
            hospital: h,
        });
    }

    fn remove(&mut self, r: usize, h: usize) {
        let pos = self.assigned[h]
            .iter()
            .position(|&x| x == r)
            .expect("assigned");
        self.assigned[h].swap_remove(pos);
        self.matched[r] = None;
        self.rejections[r * self.m + h] = self.rejections[r * self.m + h].saturating_add(1);
    }

    /// One iteration of the main loop for resident `r`.
    fn step(&mut self, r: usize) {
        let h = self.choose_hospital(r);
        let idx = r * self.m + h;
        self.proposals[idx] += 1;
        self.trace.push(Event::Propose {
            resident: r,
            hospital: h,
            count: self.proposals[idx],
        });
        let quota = self.inst.quota(h);
        let load = self.assigned[h].len();

        if load < quota.lower {
            self.accept(r, h);
            return;
        }

        let never_rejected = self.assigned[h]
            .iter()
            .copied()
            .chain(std::iter::once(r))
            .filter(|&x| self.rejections[x * self.m + h] == 0)
            .max_by_key(|&x| self.priority[x]);
        let rejected = if let Some(victim) = never_rejected {
            self.accept(r, h);
            self.remove(victim, h);
            self.trace.push(Event::RejectFirst {
                resident: victim,
                hospital: h,
            });
            victim
        } else if load < quota.upper {
            self.accept(r, h);
            return;
        } else {
            // worst for h, then minimum state, then lowest priority
            let inst = self.inst;
            let victim = self.assigned[h]
                .iter()
                .copied()
                .chain(std::iter::once(r))
                .max_by_key(|&x| {
                    (
                        inst.hospital_rank(h, x).expect("mutual"),
                        std::cmp::Reverse(self.state[x]),
                        self.priority[x],
                    )
                })
                .expect("nonempty");
            self.accept(r, h);
            self.remove(victim, h);
            self.trace.push(Event::RejectFull {
                resident: victim,
                hospital: h,
            });
            self.delete(victim, h);
            victim
        };

        if self.alive_count[rejected] == 0 {
            self.recover(rejected);
        }
        if self.state[rejected] < INACTIVE {
            self.queue.push_back(rejected);
        }
    }

    fn run(mut self) -> (Matching, Trace) {
        while let Some(r) = self.queue.pop_front() {
            debug_assert!(self.matched[r].is_none() && self.state[r] < INACTIVE);
            self.step(r);
        }
        (Matching::from_assignment(self.matched), self.trace)
    }
}

/// Runs Triple Proposal. The output is stable, satisfies the tie-priority
/// properties and admits no length-3 augmenting path towards any stable
/// matching.
pub fn triple_proposal(instance: &Instance, policy: &TieBreakPolicy) -> Result<(Matching, Trace)> {
    Ok(Run::new(instance, policy, true)?.run())
}

/// Runs Double Proposal: residents whose list empties become inactive.
pub fn double_proposal(instance: &Instance, policy: &TieBreakPolicy) -> Result<Matching> {
    Ok(double_proposal_traced(instance, policy)?.0)
}

pub fn double_proposal_traced(
    instance: &Instance,
    policy: &TieBreakPolicy,
) -> Result<(Matching, Trace)> {
    Ok(Run::new(instance, policy, false)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;
    use crate::score::Score;
    use crate::verify;

    fn tight_trio() -> Instance {
        InstanceBuilder::new()
            .resident("r1", vec![vec!["h1"], vec!["h2"]])
            .resident("r2", vec![vec!["h1"], vec!["h3"]])
            .hospital("h1", 1, 1, vec![vec!["r1", "r2"]])
            .hospital("h2", 1, 1, vec![vec!["r1"]])
            .hospital("h3", 0, 1, vec![vec!["r2"]])
            .build()
            .unwrap()
    }

    #[test]
    fn tight_trio_adversarial_run() {
        let inst = tight_trio();
        let (m, trace) = triple_proposal(&inst, &TieBreakPolicy::Explicit(vec![0, 1])).unwrap();
        assert_eq!(m.pairs(), vec![(0, 0), (1, 2)]);
        assert_eq!(verify::score(&inst, &m).unwrap(), Score::integer(2));
        assert_eq!(trace.replay(2), m);
        let expected = "\
propose r1 h1 1
accept r1 h1
propose r2 h1 1
accept r2 h1
reject-first r2 h1
propose r2 h1 2
accept r2 h1
reject-first r1 h1
propose r1 h1 2
accept r1 h1
reject-full r2 h1
delete r2 h1
propose r2 h3 1
accept r2 h3
reject-first r2 h3
propose r2 h3 2
accept r2 h3
";
        assert_eq!(trace.to_text(&inst), expected);
    }

    #[test]
    fn double_matches_triple_on_tight_trio() {
        let inst = tight_trio();
        let m = double_proposal(&inst, &TieBreakPolicy::Explicit(vec![0, 1])).unwrap();
        assert_eq!(verify::score(&inst, &m).unwrap(), Score::integer(2));
        assert!(verify::is_stable(&inst, &m).unwrap());
    }

    #[test]
    fn single_pair() {
        let inst = InstanceBuilder::new()
            .resident("r1", vec![vec!["h1"]])
            .hospital("h1", 1, 1, vec![vec!["r1"]])
            .build()
            .unwrap();
        let (m, _) = triple_proposal(&inst, &TieBreakPolicy::ByIndex).unwrap();
        assert_eq!(m.pairs(), vec![(0, 0)]);
        assert_eq!(
            double_proposal(&inst, &TieBreakPolicy::ByIndex)
                .unwrap()
                .pairs(),
            vec![(0, 0)]
        );
    }

    #[test]
    fn empty_lists_never_propose() {
        let inst = InstanceBuilder::new()
            .resident("r1", Vec::<Vec<&str>>::new())
            .hospital("h1", 0, 1, Vec::<Vec<&str>>::new())
            .build()
            .unwrap();
        let (m, trace) = triple_proposal(&inst, &TieBreakPolicy::ByIndex).unwrap();
        assert!(m.is_empty());
        assert!(trace.is_empty());
    }

    #[test]
    fn state_one_resident_displaces_tied_state_zero_resident() {
        // h1 [0,1] with tie (r1 r2); r1 lists only h1, r2 lists h1 then h2.
        let inst = InstanceBuilder::new()
            .resident("r1", vec![vec!["h1"]])
            .resident("r2", vec![vec!["h1"], vec!["h2"]])
            .hospital("h1", 0, 1, vec![vec!["r1", "r2"]])
            .hospital("h2", 0, 1, vec![vec!["r2"]])
            .build()
            .unwrap();
        let (m, trace) = triple_proposal(&inst, &TieBreakPolicy::Explicit(vec![1, 0])).unwrap();
        assert!(verify::is_stable(&inst, &m).unwrap());
        assert_eq!(m.pairs(), vec![(0, 0), (1, 1)]);
        assert!(trace.events().iter().any(|e| matches!(
            e,
            Event::State {
                resident: 0,
                state: 1
            }
        )));
    }
}
