//! Backtracking over every assignment of residents to acceptable hospitals
//! or to nobody, keeping those that respect capacities and are stable.

use crate::instance::Instance;

/// Number of leaves of the search tree: the product of `deg(r) + 1`.
pub(crate) fn count_assignments(inst: &Instance) -> u128 {
    (0..inst.num_residents())
        .map(|r| inst.resident_prefs(r).len() as u128 + 1)
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

struct Search<'a> {
    inst: &'a Instance,
    lists: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
    load: Vec<usize>,
    worst: Vec<u32>,
    leaves: u128,
}

impl Search<'_> {
    fn stable(&mut self) -> bool {
        let inst = self.inst;
        self.worst.iter_mut().for_each(|w| *w = 0);
        for (r, h) in self.assign.iter().enumerate() {
            if let Some(h) = *h {
                let rank = inst.hospital_rank(h, r).expect("listed");
                self.worst[h] = self.worst[h].max(rank);
            }
        }
        for r in 0..self.assign.len() {
            let current = self.assign[r].map(|h| inst.resident_rank(r, h).expect("listed"));
            for &h in &self.lists[r] {
                if let Some(c) = current {
                    if inst.resident_rank(r, h).expect("listed") >= c {
                        continue;
                    }
                }
                if self.load[h] < inst.quota(h).upper
                    || inst.hospital_rank(h, r).expect("mutual") < self.worst[h]
                {
                    return false;
                }
            }
        }
        true
    }

    fn go(&mut self, r: usize, emit: &mut dyn FnMut(&[Option<usize>])) {
        if r == self.assign.len() {
            self.leaves += 1;
            if self.stable() {
                emit(&self.assign);
            }
            return;
        }
        self.assign[r] = None;
        self.go(r + 1, emit);
        for i in 0..self.lists[r].len() {
            let h = self.lists[r][i];
            if self.load[h] < self.inst.quota(h).upper {
                self.load[h] += 1;
                self.assign[r] = Some(h);
                self.go(r + 1, emit);
                self.load[h] -= 1;
            }
        }
        self.assign[r] = None;
    }
}

/// Calls `emit` for every stable matching; returns the number of leaves visited.
pub(crate) fn for_each_stable(inst: &Instance, mut emit: impl FnMut(&[Option<usize>])) -> u128 {
    let n = inst.num_residents();
    let m = inst.num_hospitals();
    let mut s = Search {
        inst,
        lists: (0..n)
            .map(|r| inst.resident_prefs(r).iter().collect())
            .collect(),
        assign: vec![None; n],
        load: vec![0; m],
        worst: vec![0; m],
        leaves: 0,
    };
    s.go(0, &mut emit);
    s.leaves
}
