//! Model classes and the worst-case ratios known for them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Quota};
use crate::score::Score;

/// Which of the four models an instance belongs to. `general` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelClass {
    pub general: bool,
    /// The common quota pair, when all hospitals share one.
    pub uniform: Option<Quota>,
    pub marriage: bool,
    pub r_side_master_list: bool,
    /// No resident list contains a tie.
    pub residents_strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// OPT / WST over stable matchings.
    Gap,
    /// OPT / score of Triple Proposal.
    Approx,
}

impl FromStr for BoundKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gap" => Ok(BoundKind::Gap),
            "approx" => Ok(BoundKind::Approx),
            _ => Err(Error::InvalidArgument(format!("unknown bound kind `{s}`"))),
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Gap => "gap",
            BoundKind::Approx => "approx",
        })
    }
}

/// `phi(n)`: 1, 3/2, then `n(1 + n/2) / (n + n/2)` with floor division.
pub fn phi(n: usize) -> Result<Score> {
    match n {
        0 => Err(Error::InvalidArgument("phi(n) needs n >= 1".into())),
        1 => Ok(Score::one()),
        2 => Ok(Score::new(3, 2)),
        _ => {
            let n = n as i64;
            let half = n / 2;
            Ok(Score::new(n * (1 + half), n + half))
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

/// Whether one tied ranking of hospitals restricts to every resident's list.
fn has_master_list(inst: &Instance) -> bool {
    let m = inst.num_hospitals();
    let mut parent: Vec<usize> = (0..m).collect();
    for r in 0..inst.num_residents() {
        for g in inst.resident_prefs(r).groups() {
            for &h in &g[1..] {
                let (a, b) = (find(&mut parent, g[0]), find(&mut parent, h));
                parent[a] = b;
            }
        }
    }
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for r in 0..inst.num_residents() {
        for w in inst.resident_prefs(r).groups().windows(2) {
            let a = find(&mut parent, w[0][0]);
            let b = find(&mut parent, w[1][0]);
            if a == b {
                return false;
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
    }
    // Kahn over class representatives
    let classes: Vec<usize> = (0..m).filter(|&h| find(&mut parent, h) == h).collect();
    let mut ready: Vec<usize> = classes.iter().copied().filter(|&c| indeg[c] == 0).collect();
    let mut done = 0;
    while let Some(c) = ready.pop() {
        done += 1;
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                ready.push(d);
            }
        }
    }
    done == classes.len()
}

pub fn classify(inst: &Instance) -> ModelClass {
    let quotas = inst.quotas();
    let uniform = match quotas.first() {
        Some(&q) if quotas.iter().all(|&x| x == q) => Some(q),
        _ => None,
    };
    ModelClass {
        general: true,
        uniform,
        marriage: quotas.iter().all(|q| q.upper == 1),
        r_side_master_list: has_master_list(inst),
        residents_strict: (0..inst.num_residents()).all(|r| !inst.resident_prefs(r).has_ties()),
    }
}

/// Bound of the uniform model with quotas `[lower, upper]`.
pub fn uniform_bound(lower: usize, upper: usize, kind: BoundKind) -> Result<Score> {
    if lower == 0 {
        return Err(Error::InvalidArgument(
            "uniform bound needs lower quota >= 1".into(),
        ));
    }
    let (l, u) = (lower as i64, upper as i64);
    Ok(match kind {
        BoundKind::Gap => Score::new(u + l, l),
        BoundKind::Approx => Score::new(u + 2 * l, 2 * l),
    })
}

/// The smallest bound among the classes `inst` belongs to. A uniform class
/// with lower quota 0 has no bound and is skipped.
pub fn bound_for(inst: &Instance, kind: BoundKind) -> Score {
    let class = classify(inst);
    let n = inst.num_residents() as i64;
    let mut candidates = vec![match kind {
        BoundKind::Gap => Score::integer(n + 1),
        BoundKind::Approx => phi(inst.num_residents().max(1)).expect("n >= 1"),
    }];
    if kind == BoundKind::Gap && class.residents_strict {
        candidates.push(Score::integer(n / 2 + 1));
    }
    if class.marriage {
        candidates.push(match kind {
            BoundKind::Gap => Score::integer(2),
            BoundKind::Approx => Score::new(3, 2),
        });
    }
    if let Some(q) = class.uniform {
        if let Ok(b) = uniform_bound(q.lower, q.upper, kind) {
            candidates.push(b);
        }
    }
    candidates.into_iter().min().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceBuilder;

    #[test]
    fn phi_values() {
        assert_eq!(phi(1).unwrap(), Score::one());
        assert_eq!(phi(2).unwrap(), Score::new(3, 2));
        assert_eq!(phi(4).unwrap(), Score::integer(2));
        assert_eq!(phi(3).unwrap(), Score::new(3 * 2, 4));
        assert!(phi(0).is_err());
    }

    #[test]
    fn phi_monotone_and_below_half() {
        for n in 2..200 {
            assert!(phi(n).unwrap() <= phi(n + 1).unwrap());
            if n >= 3 {
                assert!(phi(n).unwrap() < Score::integer(1 + n as i64 / 2));
            }
        }
    }

    fn two_residents(a: [&str; 2], b: [&str; 2]) -> Instance {
        InstanceBuilder::new()
            .resident("r1", vec![vec![a[0]], vec![a[1]]])
            .resident("r2", vec![vec![b[0]], vec![b[1]]])
            .hospital("h1", 0, 1, vec![vec!["r1", "r2"]])
            .hospital("h2", 1, 1, vec![vec!["r1", "r2"]])
            .build()
            .unwrap()
    }

    #[test]
    fn master_list_detection() {
        assert!(!classify(&two_residents(["h1", "h2"], ["h2", "h1"])).r_side_master_list);
        let c = classify(&two_residents(["h1", "h2"], ["h1", "h2"]));
        assert!(c.r_side_master_list && c.marriage && c.uniform.is_none() && c.residents_strict);
        // tie h1=h2 in one list, strict in another
        let inst = InstanceBuilder::new()
            .resident("r1", vec![vec!["h1", "h2"]])
            .resident("r2", vec![vec!["h1"], vec!["h2"]])
            .hospital("h1", 0, 1, vec![vec!["r1", "r2"]])
            .hospital("h2", 0, 1, vec![vec!["r1", "r2"]])
            .build()
            .unwrap();
        assert!(!classify(&inst).r_side_master_list);
    }

    #[test]
    fn bounds_pick_tightest() {
        let inst = two_residents(["h1", "h2"], ["h1", "h2"]);
        assert_eq!(bound_for(&inst, BoundKind::Approx), Score::new(3, 2));
        assert_eq!(bound_for(&inst, BoundKind::Gap), Score::integer(2));
        assert_eq!(
            uniform_bound(1, 2, BoundKind::Gap).unwrap(),
            Score::integer(3)
        );
        assert_eq!(
            uniform_bound(1, 2, BoundKind::Approx).unwrap(),
            Score::integer(2)
        );
        assert!(uniform_bound(0, 2, BoundKind::Gap).is_err());
    }
}
