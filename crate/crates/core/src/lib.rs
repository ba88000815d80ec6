//! Stable matchings in the Hospitals/Residents problem with ties and lower
//! quotas, where the objective is the total satisfaction of lower quotas.
//!
//! The crate provides the instance model and file format, a verifier,
//! Triple Proposal with its Double Proposal and tie-break + Gale-Shapley
//! baselines, exact enumeration oracles for small instances, generators for
//! the worst-case families and the vertex-cover gadget, and a CLI.
//!
//! ```
//! use hrt_mslq::{InstanceBuilder, TieBreakPolicy, triple_proposal, verify};
//!
//! let inst = InstanceBuilder::new()
//!     .resident("r1", vec![vec!["h1"], vec!["h2"]])
//!     .resident("r2", vec![vec!["h1"], vec!["h3"]])
//!     .hospital("h1", 1, 1, vec![vec!["r1", "r2"]])
//!     .hospital("h2", 1, 1, vec![vec!["r1"]])
//!     .hospital("h3", 0, 1, vec![vec!["r2"]])
//!     .build()
//!     .unwrap();
//! let (m, _trace) = triple_proposal(&inst, &TieBreakPolicy::ByIndex).unwrap();
//! assert!(verify::is_stable(&inst, &m).unwrap());
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod score;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{Agent, Instance, InstanceBuilder, Matching, PreferenceList, Quota, Relation};
pub use score::Score;
pub use solvers::{
    baseline, break_ties, double_proposal, gale_shapley, triple_proposal, Algorithm, PolicySpec,
    TieBreakPolicy, Trace,
};
