//! Ratio sweeps: solve many instances with every compared algorithm, compare
//! against the oracle and the known bounds, and write one CSV row per
//! (instance, algorithm).

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{FamilyParams, FamilySpec, QuotaModel};
use crate::oracle::{self, bound_for, BoundKind, Budget, Method};
use crate::score::Score;
use crate::solvers::{Algorithm, TieBreakPolicy};
use crate::verify;

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "parameters",
    "seed",
    "algorithm",
    "score_alg",
    "opt",
    "wst",
    "ratio_opt_alg",
    "ratio_opt_wst",
    "bound_approx",
    "bound_gap",
    "elapsed",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub parameters: String,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub score_alg: Score,
    /// `None` when the oracle ran out of budget.
    pub opt: Option<Score>,
    pub wst: Option<Score>,
    pub bound_approx: Score,
    pub bound_gap: Score,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl BenchRow {
    pub fn ratio_opt_alg(&self) -> Option<Score> {
        self.opt.as_ref().and_then(|o| o.ratio(&self.score_alg))
    }

    pub fn ratio_opt_wst(&self) -> Option<Score> {
        match (&self.opt, &self.wst) {
            (Some(o), Some(w)) => o.ratio(w),
            _ => None,
        }
    }

    /// Bound checks that apply to this row: OPT/WST and OPT/ALG within the
    /// gap bound, and for Triple Proposal OPT/ALG within the approximation
    /// bound. Vacuous when the oracle was skipped.
    pub fn within_bounds(&self) -> bool {
        let Some(opt) = &self.opt else {
            return true;
        };
        let gap_ok = |r: Option<Score>| r.is_some_and(|r| r <= self.bound_gap);
        let mut ok = gap_ok(self.ratio_opt_wst()) && gap_ok(self.ratio_opt_alg());
        if self.algorithm == Algorithm::Triple {
            ok &= opt
                .ratio(&self.score_alg)
                .is_some_and(|r| r <= self.bound_approx);
        }
        ok
    }

    fn record(&self, with_elapsed: bool) -> Vec<String> {
        let opt = |s: Option<Score>| s.map_or_else(|| "skipped".to_string(), |s| s.to_string());
        vec![
            self.family.clone(),
            self.parameters.clone(),
            self.seed.to_string(),
            self.algorithm.to_string(),
            self.score_alg.to_string(),
            opt(self.opt.clone()),
            opt(self.wst.clone()),
            opt(self.ratio_opt_alg()),
            opt(self.ratio_opt_wst()),
            self.bound_approx.to_string(),
            self.bound_gap.to_string(),
            if with_elapsed {
                format!("{:.6}", self.elapsed.as_secs_f64())
            } else {
                String::new()
            },
        ]
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub families: Vec<String>,
    /// For `random`, `n` and `hospitals` are maxima sampled per trial.
    pub params: FamilyParams,
    pub trials: usize,
    pub seed: u64,
    pub budget: Budget,
    pub policy: TieBreakPolicy,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: vec!["random".into()],
            params: FamilyParams::default(),
            trials: 10,
            seed: 0,
            budget: Budget::default(),
            policy: TieBreakPolicy::ByIndex,
        }
    }
}

/// The spec of trial `seed` of `family`.
pub fn trial_spec(family: &str, params: &FamilyParams, seed: u64) -> Result<FamilySpec> {
    let mut p = params.clone();
    p.seed = seed;
    if family == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let min_n = if p.model == QuotaModel::Uniform {
            p.upper.max(1)
        } else {
            1
        };
        if p.n < min_n {
            return Err(Error::InvalidArgument(format!(
                "n = {} is below the upper quota",
                p.n
            )));
        }
        p.n = rng.gen_range(min_n..=p.n);
        p.hospitals = rng.gen_range(1..=p.hospitals.max(1));
    }
    FamilySpec::from_params(family, &p)
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for family in &cfg.families {
        for t in 0..cfg.trials {
            let seed = cfg.seed.wrapping_add(t as u64);
            let spec = trial_spec(family, &cfg.params, seed)?;
            let inst = spec.generate()?;
            let (opt, wst) = match oracle::opt_wst_with(&inst, Method::Auto, cfg.budget) {
                Ok((o, w)) => (Some(o), Some(w)),
                Err(Error::BudgetExceeded { .. }) => (None, None),
                Err(e) => return Err(e),
            };
            let bound_approx = bound_for(&inst, BoundKind::Approx);
            let bound_gap = bound_for(&inst, BoundKind::Gap);
            for alg in Algorithm::COMPARED {
                let start = Instant::now();
                let m = alg.solve(&inst, &cfg.policy)?;
                let elapsed = start.elapsed();
                rows.push(BenchRow {
                    family: spec.name().to_string(),
                    parameters: spec.parameters(),
                    seed,
                    algorithm: alg,
                    score_alg: verify::score(&inst, &m)?,
                    opt: opt.clone(),
                    wst: wst.clone(),
                    bound_approx: bound_approx.clone(),
                    bound_gap: bound_gap.clone(),
                    elapsed,
                });
            }
        }
    }
    rows.sort_by(|a, b| (&a.family, a.seed, a.algorithm).cmp(&(&b.family, b.seed, b.algorithm)));
    Ok(rows)
}

/// CSV with header. Without `with_elapsed` the timing column is left empty
/// so that reruns are byte-identical.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W, with_elapsed: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.record(with_elapsed)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Worst observed ratios per (family, algorithm).
#[derive(Clone, Debug, Serialize)]
pub struct SummaryLine {
    pub family: String,
    pub algorithm: Algorithm,
    pub rows: usize,
    pub skipped: usize,
    pub max_ratio_opt_alg: Option<Score>,
    pub max_ratio_opt_wst: Option<Score>,
    /// Largest bound among the rows; bounds differ per instance.
    pub max_bound_approx: Option<Score>,
    pub max_bound_gap: Option<Score>,
    pub violations: usize,
}

pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryLine> {
    let mut out: Vec<SummaryLine> = Vec::new();
    for r in rows {
        let pos = out
            .iter()
            .position(|s| s.family == r.family && s.algorithm == r.algorithm)
            .unwrap_or_else(|| {
                out.push(SummaryLine {
                    family: r.family.clone(),
                    algorithm: r.algorithm,
                    rows: 0,
                    skipped: 0,
                    max_ratio_opt_alg: None,
                    max_ratio_opt_wst: None,
                    max_bound_approx: None,
                    max_bound_gap: None,
                    violations: 0,
                });
                out.len() - 1
            });
        let s = &mut out[pos];
        s.rows += 1;
        if r.opt.is_none() {
            s.skipped += 1;
        }
        let max = |a: &mut Option<Score>, b: Option<Score>| {
            if let Some(b) = b {
                *a = Some(a.take().map_or(b.clone(), |a| a.max(b)));
            }
        };
        max(&mut s.max_ratio_opt_alg, r.ratio_opt_alg());
        max(&mut s.max_ratio_opt_wst, r.ratio_opt_wst());
        max(&mut s.max_bound_approx, Some(r.bound_approx.clone()));
        max(&mut s.max_bound_gap, Some(r.bound_gap.clone()));
        if !r.within_bounds() {
            s.violations += 1;
        }
    }
    out
}
