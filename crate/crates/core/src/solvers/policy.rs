use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Resolves every arbitrary choice a solver makes.
///
/// The policy induces a total priority order over residents. Where a solver
/// must pick one resident to reject among several eligible ones, the
/// lowest-priority resident is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TieBreakPolicy {
    /// Lower resident index means higher priority.
    #[default]
    ByIndex,
    /// A seeded pseudo-random priority order.
    Seeded(u64),
    /// Residents listed from highest to lowest priority; must be a permutation.
    Explicit(Vec<usize>),
}

impl TieBreakPolicy {
    /// Residents from highest to lowest priority.
    pub fn order(&self, num_residents: usize) -> Result<Vec<usize>> {
        match self {
            TieBreakPolicy::ByIndex => Ok((0..num_residents).collect()),
            TieBreakPolicy::Seeded(seed) => {
                let mut order: Vec<usize> = (0..num_residents).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                Ok(order)
            }
            TieBreakPolicy::Explicit(order) => {
                let mut seen = vec![false; num_residents];
                for &r in order {
                    if r >= num_residents || std::mem::replace(&mut seen[r], true) {
                        return Err(Error::InvalidPolicy(format!(
                            "resident #{r} is out of range or repeated"
                        )));
                    }
                }
                if order.len() != num_residents {
                    return Err(Error::InvalidPolicy(format!(
                        "priority lists {} of {num_residents} residents",
                        order.len()
                    )));
                }
                Ok(order.clone())
            }
        }
    }

    /// `rank[r]`: position of `r` in the priority order (0 = highest).
    pub fn ranks(&self, num_residents: usize) -> Result<Vec<usize>> {
        let order = self.order(num_residents)?;
        let mut rank = vec![0; num_residents];
        for (pos, r) in order.into_iter().enumerate() {
            rank[r] = pos;
        }
        Ok(rank)
    }

    /// Explicit policy from resident names, highest priority first.
    pub fn from_names<S: AsRef<str>>(instance: &Instance, names: &[S]) -> Result<Self> {
        let order = names
            .iter()
            .map(|n| {
                instance
                    .resident_index(n.as_ref())
                    .ok_or_else(|| Error::UnknownName {
                        name: n.as_ref().to_string(),
                        context: "policy".into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let policy = TieBreakPolicy::Explicit(order);
        policy.order(instance.num_residents())?;
        Ok(policy)
    }
}

/// CLI form of a policy before it is bound to an instance:
/// `index`, `seeded:<u64>` or `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolicySpec {
    Index,
    Seeded(u64),
    File(String),
}

impl FromStr for PolicySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "index" {
            Ok(PolicySpec::Index)
        } else if let Some(seed) = s.strip_prefix("seeded:") {
            seed.parse()
                .map(PolicySpec::Seeded)
                .map_err(|_| Error::InvalidPolicy(format!("bad seed `{seed}`")))
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(PolicySpec::File(path.to_string()))
        } else {
            Err(Error::InvalidPolicy(format!(
                "`{s}`; expected index, seeded:<u64> or file:<path>"
            )))
        }
    }
}

impl PolicySpec {
    /// The file lists resident names in descending priority, separated by
    /// whitespace or commas; parentheses are ignored, so `(r1, r2)` works.
    pub fn resolve(&self, instance: &Instance) -> Result<TieBreakPolicy> {
        match self {
            PolicySpec::Index => Ok(TieBreakPolicy::ByIndex),
            PolicySpec::Seeded(seed) => Ok(TieBreakPolicy::Seeded(*seed)),
            PolicySpec::File(path) => {
                let text = fs::read_to_string(Path::new(path))?;
                let names: Vec<&str> = text
                    .split(|c: char| c.is_whitespace() || matches!(c, ',' | '(' | ')'))
                    .filter(|t| !t.is_empty())
                    .collect();
                TieBreakPolicy::from_names(instance, &names)
            }
        }
    }
}
