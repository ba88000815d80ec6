//! Seeded random instances.
//!
//! Each resident list has length uniform in `[1, max_list]` (capped by the
//! number of hospitals). Consecutive entries are merged into ties: a new
//! group is a tie with probability `tie_prob`, and a tie keeps growing with
//! probability `tie_prob` up to [`MAX_TIE`] members. Hospital lists contain
//! exactly the residents that listed them, shuffled and tied the same way.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, PreferenceList, Quota};

pub const MAX_TIE: usize = 4;

/// Quota model of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotaModel {
    /// `u(h) = 1`, `l(h)` in {0, 1}.
    Marriage,
    /// Every hospital gets `[lower, upper]`.
    Uniform,
    /// `u(h)` uniform in `[1, upper]`, `l(h)` uniform in `[0, u(h)]`.
    General,
    /// General quotas, resident lists restricted from one tied master list.
    MasterList,
}

impl FromStr for QuotaModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "marriage" => Ok(QuotaModel::Marriage),
            "uniform" => Ok(QuotaModel::Uniform),
            "general" => Ok(QuotaModel::General),
            "master_list" | "master-list" => Ok(QuotaModel::MasterList),
            _ => Err(Error::InvalidArgument(format!("unknown quota model `{s}`"))),
        }
    }
}

impl fmt::Display for QuotaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotaModel::Marriage => "marriage",
            QuotaModel::Uniform => "uniform",
            QuotaModel::General => "general",
            QuotaModel::MasterList => "master_list",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomSpec {
    pub residents: usize,
    pub hospitals: usize,
    pub model: QuotaModel,
    /// Uniform model quotas; `upper` also caps general quotas.
    pub lower: usize,
    pub upper: usize,
    pub tie_prob: f64,
    pub max_list: usize,
    pub seed: u64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            residents: 6,
            hospitals: 4,
            model: QuotaModel::General,
            lower: 1,
            upper: 2,
            tie_prob: 0.3,
            max_list: 3,
            seed: 0,
        }
    }
}

fn group<T: Copy>(items: &[T], p: f64, rng: &mut ChaCha8Rng) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let mut size = 1;
        if rng.gen_bool(p) {
            size = 2;
            while size < MAX_TIE && rng.gen_bool(p) {
                size += 1;
            }
        }
        let end = (i + size).min(items.len());
        out.push(items[i..end].to_vec());
        i = end;
    }
    out
}

impl RandomSpec {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(0.0..=1.0).contains(&self.tie_prob) {
            return bad(format!(
                "tie probability {} is outside [0, 1]",
                self.tie_prob
            ));
        }
        if self.residents > 0 && (self.hospitals == 0 || self.max_list == 0) {
            return bad("residents need at least one hospital and max_list >= 1".into());
        }
        if self.upper == 0 {
            return bad("upper quota must be >= 1".into());
        }
        if self.model == QuotaModel::Uniform {
            if self.lower == 0 || self.lower > self.upper {
                return bad(format!(
                    "uniform model needs 1 <= lower <= upper, got [{}, {}]",
                    self.lower, self.upper
                ));
            }
            if self.upper > self.residents {
                return bad(format!(
                    "uniform upper quota {} exceeds the {} residents",
                    self.upper, self.residents
                ));
            }
        }
        if self.model != QuotaModel::Uniform && self.residents == 0 && self.hospitals > 0 {
            return bad("hospitals need at least one resident".into());
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Instance> {
        self.validate()?;
        let (n, m) = (self.residents, self.hospitals);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let master: Option<Vec<Vec<usize>>> = (self.model == QuotaModel::MasterList).then(|| {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(&mut rng);
            group(&order, self.tie_prob, &mut rng)
        });

        let mut residents = Vec::with_capacity(n);
        for _ in 0..n {
            let len = rng.gen_range(1..=self.max_list.min(m));
            let mut chosen: Vec<usize> = (0..m).collect();
            chosen.shuffle(&mut rng);
            chosen.truncate(len);
            let groups = match &master {
                Some(master) => master
                    .iter()
                    .map(|g| {
                        g.iter()
                            .copied()
                            .filter(|h| chosen.contains(h))
                            .collect::<Vec<_>>()
                    })
                    .filter(|g| !g.is_empty())
                    .collect(),
                None => group(&chosen, self.tie_prob, &mut rng),
            };
            residents.push(PreferenceList::new(groups));
        }

        let mut hospitals = Vec::with_capacity(m);
        for h in 0..m {
            let mut listed: Vec<usize> = (0..n)
                .filter(|&r| residents[r].iter().any(|x| x == h))
                .collect();
            listed.shuffle(&mut rng);
            hospitals.push(PreferenceList::new(group(&listed, self.tie_prob, &mut rng)));
        }

        let quotas: Vec<Quota> = (0..m)
            .map(|_| match self.model {
                QuotaModel::Marriage => Quota::new(rng.gen_range(0..=1), 1),
                QuotaModel::Uniform => Quota::new(self.lower, self.upper),
                QuotaModel::General | QuotaModel::MasterList => {
                    let upper = rng.gen_range(1..=self.upper.min(n).max(1));
                    Quota::new(rng.gen_range(0..=upper), upper)
                }
            })
            .collect();
        Instance::from_indexed(residents, quotas.into_iter().zip(hospitals).collect())
    }
}
