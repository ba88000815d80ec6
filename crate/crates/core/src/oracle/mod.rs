//! Exact enumeration of stable matchings on small instances.
//!
//! Two independent methods: enumerating every tie-breaking of both sides,
//! and backtracking over all assignments. Both are exponential and guarded
//! by a budget on the number of tie-breakings or search-tree leaves.

mod bounds;
mod exhaustive;
mod tiebreak;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub use bounds::{bound_for, classify, phi, uniform_bound, BoundKind, ModelClass};

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching};
use crate::score::Score;
use crate::verify;
use tiebreak::{LatticeWalker, TieBreakings};

pub const DEFAULT_TIEBREAK_BUDGET: u128 = 1_000_000;
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    TieBreak,
    Exhaustive,
    /// Whichever of the two needs fewer steps within its budget.
    Auto,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tiebreak" => Ok(Method::TieBreak),
            "exhaustive" => Ok(Method::Exhaustive),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::InvalidArgument(format!(
                "unknown oracle method `{s}`"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::TieBreak => "tiebreak",
            Method::Exhaustive => "exhaustive",
            Method::Auto => "auto",
        })
    }
}

/// Enumeration budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub tiebreakings: u128,
    pub assignments: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            tiebreakings: DEFAULT_TIEBREAK_BUDGET,
            assignments: DEFAULT_EXHAUSTIVE_BUDGET,
        }
    }
}

impl Budget {
    /// Same limit for both methods.
    pub fn uniform(limit: u128) -> Self {
        Budget {
            tiebreakings: limit,
            assignments: limit,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    /// Distinct stable matchings in increasing order.
    pub matchings: Vec<Matching>,
    pub opt: Score,
    pub wst: Score,
    /// Tie-breakings or leaves visited.
    pub explored: u128,
    pub method: Method,
}

impl OracleReport {
    pub fn count(&self) -> usize {
        self.matchings.len()
    }

    pub fn gap(&self) -> Option<Score> {
        self.opt.ratio(&self.wst)
    }

    fn build(
        inst: &Instance,
        set: HashSet<Vec<Option<usize>>>,
        explored: u128,
        method: Method,
    ) -> Self {
        let mut matchings: Vec<Matching> = set.into_iter().map(Matching::from_assignment).collect();
        matchings.sort();
        let (opt, wst) = score_range(inst, &matchings);
        OracleReport {
            matchings,
            opt,
            wst,
            explored,
            method,
        }
    }
}

fn score_range<'a>(
    inst: &Instance,
    matchings: impl IntoIterator<Item = &'a Matching>,
) -> (Score, Score) {
    let mut range: Option<(Score, Score)> = None;
    for m in matchings {
        let loads = m.loads(inst.num_hospitals());
        let s = verify::score_from_loads(inst, &loads);
        range = Some(match range {
            None => (s.clone(), s),
            Some((hi, lo)) => (hi.max(s.clone()), lo.min(s)),
        });
    }
    range.unwrap_or_else(|| (Score::zero(), Score::zero()))
}

/// Number of complete tie-breakings of both sides (saturating).
pub fn tiebreak_count(inst: &Instance) -> u128 {
    tiebreak::count_tiebreakings(inst)
}

/// Number of leaves of the exhaustive search (saturating).
pub fn exhaustive_count(inst: &Instance) -> u128 {
    exhaustive::count_assignments(inst)
}

fn check(required: u128, limit: u128) -> Result<()> {
    if required > limit {
        Err(Error::BudgetExceeded { required, limit })
    } else {
        Ok(())
    }
}

/// Every stable matching, found as the union over all tie-breakings of the
/// stable matchings of each strict instance.
pub fn enumerate_stable_by_tiebreak(inst: &Instance, limit: u128) -> Result<OracleReport> {
    let count = tiebreak_count(inst);
    check(count, limit)?;
    let mut set = HashSet::new();
    let mut tb = TieBreakings::new(inst);
    loop {
        let p = tb.profile();
        LatticeWalker::new(p).for_each_stable(p, |a| {
            set.insert(a);
        });
        if !tb.advance() {
            break;
        }
    }
    Ok(OracleReport::build(inst, set, count, Method::TieBreak))
}

/// The resident-optimal matching of every tie-breaking. Not the whole stable
/// set, but it attains both OPT and WST, and is much cheaper.
pub fn resident_optimal_by_tiebreak(inst: &Instance, limit: u128) -> Result<OracleReport> {
    let count = tiebreak_count(inst);
    check(count, limit)?;
    let mut set = HashSet::new();
    let mut tb = TieBreakings::new(inst);
    loop {
        set.insert(tb.profile().deferred_acceptance());
        if !tb.advance() {
            break;
        }
    }
    Ok(OracleReport::build(inst, set, count, Method::TieBreak))
}

/// Every stable matching by backtracking over all assignments within `E`.
pub fn enumerate_stable_exhaustive(inst: &Instance, limit: u128) -> Result<OracleReport> {
    check(exhaustive_count(inst), limit)?;
    let mut set = HashSet::new();
    let leaves = exhaustive::for_each_stable(inst, |a| {
        set.insert(a.to_vec());
    });
    Ok(OracleReport::build(inst, set, leaves, Method::Exhaustive))
}

fn pick(inst: &Instance, method: Method, budget: Budget) -> Result<Method> {
    let tb = tiebreak_count(inst);
    let ex = exhaustive_count(inst);
    match method {
        Method::TieBreak => check(tb, budget.tiebreakings).map(|_| Method::TieBreak),
        Method::Exhaustive => check(ex, budget.assignments).map(|_| Method::Exhaustive),
        Method::Auto => {
            let tb_ok = tb <= budget.tiebreakings;
            let ex_ok = ex <= budget.assignments;
            match (tb_ok, ex_ok) {
                (true, true) if ex < tb => Ok(Method::Exhaustive),
                (true, _) => Ok(Method::TieBreak),
                (false, true) => Ok(Method::Exhaustive),
                (false, false) => Err(Error::BudgetExceeded {
                    required: tb,
                    limit: budget.tiebreakings,
                }),
            }
        }
    }
}

/// Full stable set with the chosen method.
pub fn enumerate(inst: &Instance, method: Method, budget: Budget) -> Result<OracleReport> {
    match pick(inst, method, budget)? {
        Method::Exhaustive => enumerate_stable_exhaustive(inst, budget.assignments),
        _ => enumerate_stable_by_tiebreak(inst, budget.tiebreakings),
    }
}

/// `(OPT, WST)` with default budgets.
pub fn opt_wst(inst: &Instance) -> Result<(Score, Score)> {
    opt_wst_with(inst, Method::Auto, Budget::default())
}

pub fn opt_wst_with(inst: &Instance, method: Method, budget: Budget) -> Result<(Score, Score)> {
    let report = match pick(inst, method, budget)? {
        Method::Exhaustive => enumerate_stable_exhaustive(inst, budget.assignments)?,
        _ => resident_optimal_by_tiebreak(inst, budget.tiebreakings)?,
    };
    Ok((report.opt, report.wst))
}
