//! Proposal algorithms and the tie-break + deferred acceptance baseline.

mod gale_shapley;
mod policy;
mod proposal;
mod trace;

use std::fmt;
use std::str::FromStr;

pub(crate) use gale_shapley::StrictProfile;
pub use gale_shapley::{baseline, break_ties, gale_shapley};
pub use policy::{PolicySpec, TieBreakPolicy};
pub use proposal::{double_proposal, double_proposal_traced, triple_proposal};
pub use trace::{Event, Trace};

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching};

/// Algorithms selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Triple,
    Double,
    Baseline,
    /// Plain deferred acceptance; requires strict preferences.
    GaleShapley,
}

impl Algorithm {
    pub const COMPARED: [Algorithm; 3] =
        [Algorithm::Triple, Algorithm::Double, Algorithm::Baseline];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Triple => "triple",
            Algorithm::Double => "double",
            Algorithm::Baseline => "baseline",
            Algorithm::GaleShapley => "gs",
        }
    }

    pub fn solve(self, instance: &Instance, policy: &TieBreakPolicy) -> Result<Matching> {
        match self {
            Algorithm::Triple => triple_proposal(instance, policy).map(|(m, _)| m),
            Algorithm::Double => double_proposal(instance, policy),
            Algorithm::Baseline => baseline(instance, policy),
            Algorithm::GaleShapley => gale_shapley(instance),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl serde::Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triple" => Ok(Algorithm::Triple),
            "double" => Ok(Algorithm::Double),
            "baseline" => Ok(Algorithm::Baseline),
            "gs" => Ok(Algorithm::GaleShapley),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm `{s}`"))),
        }
    }
}
