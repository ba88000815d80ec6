//! Instance families: the named worst cases, random instances, the
//! vertex-cover gadget and the SMTI conversion.

pub mod families;
mod gadget;
mod graph;
mod random;
mod smti;

use std::fmt;

pub use gadget::{vc_gadget, Gadget};
pub use graph::{min_vertex_cover, tau_bruteforce, Graph, MAX_VERTICES};
pub use random::{QuotaModel, RandomSpec, MAX_TIE};
pub use smti::{to_smti, SmtiReduction};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solvers::TieBreakPolicy;

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    MarriageGap,
    MarriageTight,
    UniformGap { lower: usize, upper: usize },
    UniformTight { lower: usize, upper: usize },
    GeneralGap { n: usize },
    StrictGap { n: usize },
    PhiTight { n: usize },
    Random(RandomSpec),
}

pub const FAMILY_NAMES: [&str; 8] = [
    "marriage_gap",
    "marriage_tight",
    "uniform_gap",
    "uniform_tight",
    "general_gap",
    "strict_gap",
    "phi_tight",
    "random",
];

/// Loose parameters, as they come from a command line.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub n: usize,
    pub hospitals: usize,
    pub lower: usize,
    pub upper: usize,
    pub seed: u64,
    pub tie_prob: f64,
    pub max_list: usize,
    pub model: QuotaModel,
}

impl Default for FamilyParams {
    fn default() -> Self {
        let r = RandomSpec::default();
        FamilyParams {
            n: 4,
            hospitals: r.hospitals,
            lower: r.lower,
            upper: r.upper,
            seed: r.seed,
            tie_prob: r.tie_prob,
            max_list: r.max_list,
            model: r.model,
        }
    }
}

impl FamilySpec {
    pub fn from_params(name: &str, p: &FamilyParams) -> Result<FamilySpec> {
        Ok(match name {
            "marriage_gap" => FamilySpec::MarriageGap,
            "marriage_tight" => FamilySpec::MarriageTight,
            "uniform_gap" => FamilySpec::UniformGap {
                lower: p.lower,
                upper: p.upper,
            },
            "uniform_tight" => FamilySpec::UniformTight {
                lower: p.lower,
                upper: p.upper,
            },
            "general_gap" => FamilySpec::GeneralGap { n: p.n },
            "strict_gap" => FamilySpec::StrictGap { n: p.n },
            "phi_tight" => FamilySpec::PhiTight { n: p.n },
            "random" => FamilySpec::Random(RandomSpec {
                residents: p.n,
                hospitals: p.hospitals,
                model: p.model,
                lower: p.lower,
                upper: p.upper,
                tie_prob: p.tie_prob,
                max_list: p.max_list,
                seed: p.seed,
            }),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family `{name}`; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::MarriageGap => "marriage_gap",
            FamilySpec::MarriageTight => "marriage_tight",
            FamilySpec::UniformGap { .. } => "uniform_gap",
            FamilySpec::UniformTight { .. } => "uniform_tight",
            FamilySpec::GeneralGap { .. } => "general_gap",
            FamilySpec::StrictGap { .. } => "strict_gap",
            FamilySpec::PhiTight { .. } => "phi_tight",
            FamilySpec::Random(_) => "random",
        }
    }

    /// `key=value` pairs separated by `;`, enough to rebuild the instance.
    pub fn parameters(&self) -> String {
        match self {
            FamilySpec::MarriageGap | FamilySpec::MarriageTight => String::new(),
            FamilySpec::UniformGap { lower, upper } | FamilySpec::UniformTight { lower, upper } => {
                format!("lower={lower};upper={upper}")
            }
            FamilySpec::GeneralGap { n }
            | FamilySpec::StrictGap { n }
            | FamilySpec::PhiTight { n } => {
                format!("n={n}")
            }
            FamilySpec::Random(r) => format!(
                "model={};n={};m={};lower={};upper={};tie_prob={};max_list={}",
                r.model, r.residents, r.hospitals, r.lower, r.upper, r.tie_prob, r.max_list
            ),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            FamilySpec::Random(r) => Some(r.seed),
            _ => None,
        }
    }

    pub fn generate(&self) -> Result<Instance> {
        match *self {
            FamilySpec::MarriageGap => Ok(families::marriage_gap()),
            FamilySpec::MarriageTight => Ok(families::marriage_tight()),
            FamilySpec::UniformGap { lower, upper } => families::uniform_gap(lower, upper),
            FamilySpec::UniformTight { lower, upper } => families::uniform_tight(lower, upper),
            FamilySpec::GeneralGap { n } => families::general_gap(n),
            FamilySpec::StrictGap { n } => families::strict_gap(n),
            FamilySpec::PhiTight { n } => families::phi_tight(n),
            FamilySpec::Random(ref r) => r.generate(),
        }
    }

    /// The priority under which Triple Proposal reaches the family's worst
    /// case. Residents are generated in that order, so it is index order.
    pub fn adversarial_policy(&self) -> TieBreakPolicy {
        TieBreakPolicy::ByIndex
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.parameters();
        if p.is_empty() {
            f.write_str(self.name())
        } else {
            write!(f, "{}({p})", self.name())
        }
    }
}

/// Builds a family instance; see [`FamilySpec::generate`].
pub fn generate(spec: &FamilySpec) -> Result<Instance> {
    spec.generate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Quota;
    use crate::oracle::{classify, opt_wst};
    use crate::score::Score;
    use crate::solvers::triple_proposal;
    use crate::verify;

    #[test]
    fn named_shapes() {
        let g = generate(&FamilySpec::MarriageGap).unwrap();
        assert_eq!((g.num_residents(), g.num_hospitals()), (2, 2));
        assert!(g.hospital_prefs(0).has_ties());

        let t = generate(&FamilySpec::UniformTight { lower: 1, upper: 2 }).unwrap();
        assert_eq!((t.num_residents(), t.num_hospitals()), (6, 4));
        let x = t.hospital_index("x").unwrap();
        assert_eq!(t.hospital_prefs(x).groups().len(), 1);
        assert_eq!(t.hospital_prefs(x).len(), 4);
        assert!(!t.hospital_prefs(t.hospital_index("y").unwrap()).has_ties());

        let p = generate(&FamilySpec::PhiTight { n: 4 }).unwrap();
        assert_eq!(p.quota(p.hospital_index("x").unwrap()), Quota::new(2, 2));
        assert_eq!(p.quota(p.hospital_index("y").unwrap()), Quota::new(4, 4));
        assert!(classify(&p).r_side_master_list);
    }

    #[test]
    fn uniform_tight_adversarial_run() {
        let spec = FamilySpec::UniformTight { lower: 1, upper: 2 };
        let inst = generate(&spec).unwrap();
        let (m, _) = triple_proposal(&inst, &spec.adversarial_policy()).unwrap();
        assert_eq!(verify::score(&inst, &m).unwrap(), Score::integer(2));
        assert_eq!(opt_wst(&inst).unwrap().0, Score::integer(4));
    }

    #[test]
    fn parameter_validation() {
        assert!(generate(&FamilySpec::UniformGap { lower: 0, upper: 2 }).is_err());
        assert!(generate(&FamilySpec::UniformTight { lower: 3, upper: 2 }).is_err());
        assert!(generate(&FamilySpec::GeneralGap { n: 0 }).is_err());
        assert!(FamilySpec::from_params("nope", &FamilyParams::default()).is_err());
    }
}
