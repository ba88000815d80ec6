//! The `hrt-mslq` command line.
//!
//! Exit codes: 0 success, 1 a negative answer (unstable matching, bound
//! violated, gadget check failed, oracle over budget), 2 bad usage or input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{self, BenchConfig};
use crate::error::{Error, Result};
use crate::generators::{
    min_vertex_cover, to_smti, vc_gadget, FamilyParams, FamilySpec, Graph, QuotaModel,
};
use crate::instance::{Instance, Matching};
use crate::io::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use crate::oracle::{self, Budget, Method};
use crate::score::Score;
use crate::solvers::{double_proposal_traced, triple_proposal, Algorithm, PolicySpec};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "hrt-mslq",
    version,
    about = "Hospitals/residents with ties and lower quotas"
)]
pub struct Cli {
    /// Oracle budget: maximum tie-breakings or search leaves.
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance from a family.
    Gen {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an algorithm on an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "triple")]
        algo: Algorithm,
        /// index | seeded:<u64> | file:<path>
        #[arg(long, default_value = "index")]
        policy: PolicySpec,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the proposal trace (triple or double only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a matching: stability, score, blocking pairs.
    Verify {
        instance: PathBuf,
        matching: PathBuf,
    },
    /// Exact OPT and WST over all stable matchings.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// List every stable matching.
        #[arg(long)]
        all: bool,
    },
    /// Ratio sweep over families, written as CSV.
    Bench {
        #[arg(long = "family", default_values_t = vec!["random".to_string()])]
        families: Vec<String>,
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value = "index")]
        policy: PolicySpec,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the elapsed column empty so reruns are byte-identical.
        #[arg(long)]
        no_elapsed: bool,
    },
    /// Vertex-cover gadget.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Marriage instance to SMTI and matchings across the two.
    Smti {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Map a matching of the instance to the SMTI side.
        #[arg(long, conflicts_with = "back")]
        forward: Option<PathBuf>,
        /// Map an SMTI matching back to the instance.
        #[arg(long)]
        back: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCommand {
    /// Build the HRT instance of a graph.
    Build {
        graph: PathBuf,
        #[command(flatten)]
        quotas: GadgetQuotas,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Round-trip a minimum cover through the gadget.
    Check {
        graph: PathBuf,
        #[command(flatten)]
        quotas: GadgetQuotas,
        /// Also compare OPT from the oracle.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args, Debug)]
struct GadgetQuotas {
    #[arg(long, default_value_t = 1)]
    lower: usize,
    #[arg(long, default_value_t = 2)]
    upper: usize,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Size parameter; for `random` the resident count.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    hospitals: Option<usize>,
    #[arg(long)]
    lower: Option<usize>,
    #[arg(long)]
    upper: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tie_prob: Option<f64>,
    #[arg(long)]
    max_list: Option<usize>,
    #[arg(long)]
    model: Option<QuotaModel>,
}

impl FamilyArgs {
    fn params(&self) -> FamilyParams {
        let d = FamilyParams::default();
        FamilyParams {
            n: self.n.unwrap_or(d.n),
            hospitals: self.hospitals.unwrap_or(d.hospitals),
            lower: self.lower.unwrap_or(d.lower),
            upper: self.upper.unwrap_or(d.upper),
            seed: self.seed.unwrap_or(d.seed),
            tie_prob: self.tie_prob.unwrap_or(d.tie_prob),
            max_list: self.max_list.unwrap_or(d.max_list),
            model: self.model.unwrap_or(d.model),
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    format: Format,
    budget: Budget,
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        out: stdout,
        format: cli.format,
        budget: cli.budget.map_or_else(Budget::default, Budget::uniform),
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<i32> {
    match cmd {
        Command::Gen {
            family,
            params,
            out,
        } => cmd_gen(ctx, &family, &params.params(), out.as_deref()),
        Command::Solve {
            instance,
            algo,
            policy,
            out,
            trace,
        } => cmd_solve(
            ctx,
            &instance,
            algo,
            &policy,
            out.as_deref(),
            trace.as_deref(),
        ),
        Command::Verify { instance, matching } => cmd_verify(ctx, &instance, &matching),
        Command::Oracle {
            instance,
            method,
            all,
        } => cmd_oracle(ctx, &instance, method, all),
        Command::Bench {
            families,
            params,
            trials,
            policy,
            out,
            no_elapsed,
        } => {
            let cfg = BenchConfig {
                families,
                params: params.params(),
                trials,
                seed: params.seed.unwrap_or(0),
                budget: ctx.budget,
                policy: match policy {
                    PolicySpec::File(_) => {
                        return Err(Error::InvalidPolicy(
                            "bench takes index or seeded:<u64>".into(),
                        ))
                    }
                    PolicySpec::Index => crate::solvers::TieBreakPolicy::ByIndex,
                    PolicySpec::Seeded(s) => crate::solvers::TieBreakPolicy::Seeded(s),
                },
            };
            cmd_bench(ctx, &cfg, out.as_deref(), !no_elapsed)
        }
        Command::Gadget(g) => cmd_gadget(ctx, g),
        Command::Smti {
            instance,
            out,
            forward,
            back,
        } => cmd_smti(
            ctx,
            &instance,
            out.as_deref(),
            forward.as_deref(),
            back.as_deref(),
        ),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn load_matching(inst: &Instance, path: &Path) -> Result<Matching> {
    parse_matching(inst, &read(path)?)
}

/// Writes `bytes` to `path`, or to stdout when there is no path.
fn emit(ctx: &mut Ctx<'_>, path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(ctx.out.write_all(bytes)?),
    }
}

fn pairs_json(inst: &Instance, m: &Matching) -> serde_json::Value {
    m.pairs()
        .into_iter()
        .map(|(r, h)| json!([inst.resident_name(r), inst.hospital_name(h)]))
        .collect()
}

fn print_json(ctx: &mut Ctx<'_>, v: serde_json::Value) -> Result<()> {
    writeln!(
        ctx.out,
        "{}",
        serde_json::to_string_pretty(&v).expect("json")
    )?;
    Ok(())
}

fn cmd_gen(
    ctx: &mut Ctx<'_>,
    family: &str,
    params: &FamilyParams,
    out: Option<&Path>,
) -> Result<i32> {
    let spec = FamilySpec::from_params(family, params)?;
    let inst = spec.generate()?;
    emit(ctx, out, &serialize_instance(&inst))?;
    if let Some(path) = out {
        match ctx.format {
            Format::Text => writeln!(
                ctx.out,
                "{spec}: {} residents, {} hospitals -> {}",
                inst.num_residents(),
                inst.num_hospitals(),
                path.display()
            )?,
            Format::Json => print_json(
                ctx,
                json!({
                    "family": spec.name(),
                    "parameters": spec.parameters(),
                    "residents": inst.num_residents(),
                    "hospitals": inst.num_hospitals(),
                    "out": path.display().to_string(),
                }),
            )?,
        }
    }
    Ok(0)
}

fn cmd_solve(
    ctx: &mut Ctx<'_>,
    path: &Path,
    algo: Algorithm,
    policy: &PolicySpec,
    out: Option<&Path>,
    trace_out: Option<&Path>,
) -> Result<i32> {
    let inst = load_instance(path)?;
    let policy = policy.resolve(&inst)?;
    let (m, trace) = match algo {
        Algorithm::Triple => {
            let (m, t) = triple_proposal(&inst, &policy)?;
            (m, Some(t))
        }
        Algorithm::Double => {
            let (m, t) = double_proposal_traced(&inst, &policy)?;
            (m, Some(t))
        }
        _ => (algo.solve(&inst, &policy)?, None),
    };
    if let Some(tp) = trace_out {
        let t = trace.ok_or_else(|| {
            Error::InvalidArgument(format!("--trace needs triple or double, not {algo}"))
        })?;
        fs::write(tp, t.to_text(&inst)).map_err(|e| Error::Io(format!("{}: {e}", tp.display())))?;
    }
    if let Some(p) = out {
        fs::write(p, serialize_matching(&inst, &m))
            .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    let score = verify::score(&inst, &m)?;
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "algorithm: {algo}")?;
            writeln!(ctx.out, "score: {}", score.with_decimal())?;
            writeln!(ctx.out, "matching: {}", m.display(&inst))?;
        }
        Format::Json => print_json(
            ctx,
            json!({"algorithm": algo, "score": score, "matching": pairs_json(&inst, &m)}),
        )?,
    }
    Ok(0)
}

fn cmd_verify(ctx: &mut Ctx<'_>, ipath: &Path, mpath: &Path) -> Result<i32> {
    let inst = load_instance(ipath)?;
    let m = load_matching(&inst, mpath)?;
    let blocking = verify::blocking_pairs(&inst, &m)?;
    let score = verify::score(&inst, &m)?;
    let stable = blocking.is_empty();
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "stable: {}", if stable { "yes" } else { "no" })?;
            writeln!(ctx.out, "score: {}", score.with_decimal())?;
            if !stable {
                writeln!(ctx.out, "blocking pairs:")?;
                for b in &blocking {
                    writeln!(
                        ctx.out,
                        "  ({}, {})",
                        inst.resident_name(b.resident),
                        inst.hospital_name(b.hospital)
                    )?;
                }
            }
        }
        Format::Json => {
            let pairs: Vec<_> = blocking
                .iter()
                .map(|b| {
                    json!([
                        inst.resident_name(b.resident),
                        inst.hospital_name(b.hospital)
                    ])
                })
                .collect();
            print_json(
                ctx,
                json!({"stable": stable, "score": score, "blocking_pairs": pairs}),
            )?
        }
    }
    Ok(if stable { 0 } else { 1 })
}

fn cmd_oracle(ctx: &mut Ctx<'_>, path: &Path, method: Method, all: bool) -> Result<i32> {
    let inst = load_instance(path)?;
    let report = oracle::enumerate(&inst, method, ctx.budget)?;
    let gap = report.gap();
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "method: {}", report.method)?;
            writeln!(ctx.out, "explored: {}", report.explored)?;
            writeln!(ctx.out, "stable matchings: {}", report.count())?;
            writeln!(ctx.out, "OPT: {}", report.opt.with_decimal())?;
            writeln!(ctx.out, "WST: {}", report.wst.with_decimal())?;
            if let Some(g) = &gap {
                writeln!(ctx.out, "OPT/WST: {}", g.with_decimal())?;
            }
            if all {
                for m in &report.matchings {
                    let s = verify::score(&inst, m)?;
                    writeln!(ctx.out, "{}  {}", s, m.display(&inst))?;
                }
            }
        }
        Format::Json => {
            let mut v = json!({
                "method": report.method.to_string(),
                "explored": report.explored.to_string(),
                "count": report.count(),
                "opt": report.opt,
                "wst": report.wst,
                "gap": gap,
            });
            if all {
                let ms = report
                    .matchings
                    .iter()
                    .map(|m| Ok(json!({"score": verify::score(&inst, m)?, "pairs": pairs_json(&inst, m)})))
                    .collect::<Result<Vec<_>>>()?;
                v["matchings"] = ms.into();
            }
            print_json(ctx, v)?;
        }
    }
    Ok(0)
}

fn cmd_bench(
    ctx: &mut Ctx<'_>,
    cfg: &BenchConfig,
    out: Option<&Path>,
    with_elapsed: bool,
) -> Result<i32> {
    let rows = bench::run(cfg)?;
    let mut csv = Vec::new();
    bench::write_csv(&rows, &mut csv, with_elapsed)?;
    emit(ctx, out, &csv)?;
    let summary = bench::summarize(&rows);
    let violations: usize = summary.iter().map(|s| s.violations).sum();
    // With the CSV on stdout the summary would corrupt it.
    if out.is_some() {
        match ctx.format {
            Format::Text => {
                let show = |s: &Option<Score>| {
                    s.as_ref()
                        .map_or_else(|| "-".to_string(), Score::with_decimal)
                };
                for s in &summary {
                    writeln!(
                        ctx.out,
                        "{} {}: rows {} skipped {} max OPT/ALG {} (approx bound {}) max OPT/WST {} (gap bound {}) violations {}",
                        s.family,
                        s.algorithm,
                        s.rows,
                        s.skipped,
                        show(&s.max_ratio_opt_alg),
                        show(&s.max_bound_approx),
                        show(&s.max_ratio_opt_wst),
                        show(&s.max_bound_gap),
                        s.violations
                    )?;
                }
            }
            Format::Json => print_json(ctx, json!({ "summary": summary }))?,
        }
    }
    Ok(if violations == 0 { 0 } else { 1 })
}

fn load_graph(path: &Path) -> Result<Graph> {
    let bytes = read(path)?;
    let text =
        String::from_utf8(bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Graph::parse(&text)
}

fn cmd_gadget(ctx: &mut Ctx<'_>, cmd: GadgetCommand) -> Result<i32> {
    match cmd {
        GadgetCommand::Build { graph, quotas, out } => {
            let g = vc_gadget(&load_graph(&graph)?, quotas.lower, quotas.upper)?;
            emit(ctx, out.as_deref(), &serialize_instance(g.instance()))?;
            Ok(0)
        }
        GadgetCommand::Check {
            graph,
            quotas,
            oracle,
        } => {
            let g = vc_gadget(&load_graph(&graph)?, quotas.lower, quotas.upper)?;
            let inst = g.instance();
            let cover = min_vertex_cover(g.graph())?;
            let m = g.cover_to_stable(&cover)?;
            let stable = verify::is_stable(inst, &m)?;
            let score = verify::score(inst, &m)?;
            let expected = g.cover_score(cover.len());
            let back = g.cover_from_stable(&m)?;
            let mut ok = stable && score == expected && back.len() <= cover.len();
            let opt = if oracle {
                let (opt, _) = oracle::opt_wst_with(inst, Method::Auto, ctx.budget)?;
                ok &= opt == expected;
                Some(opt)
            } else {
                None
            };
            let names = |c: &[usize]| {
                c.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            match ctx.format {
                Format::Text => {
                    writeln!(
                        ctx.out,
                        "gadget: {} residents, {} hospitals, theta {}",
                        inst.num_residents(),
                        inst.num_hospitals(),
                        g.theta()
                    )?;
                    writeln!(
                        ctx.out,
                        "minimum cover: {{{}}} (size {})",
                        names(&cover),
                        cover.len()
                    )?;
                    writeln!(ctx.out, "stable: {}", if stable { "yes" } else { "no" })?;
                    writeln!(ctx.out, "score: {}", score.with_decimal())?;
                    writeln!(ctx.out, "expected: {}", expected.with_decimal())?;
                    writeln!(ctx.out, "recovered cover: {{{}}}", names(&back))?;
                    if let Some(o) = &opt {
                        writeln!(ctx.out, "OPT: {}", o.with_decimal())?;
                    }
                    writeln!(ctx.out, "check: {}", if ok { "ok" } else { "FAILED" })?;
                }
                Format::Json => print_json(
                    ctx,
                    json!({
                        "residents": inst.num_residents(),
                        "hospitals": inst.num_hospitals(),
                        "theta": g.theta(),
                        "cover": cover,
                        "stable": stable,
                        "score": score,
                        "expected": expected,
                        "recovered_cover": back,
                        "opt": opt,
                        "ok": ok,
                    }),
                )?,
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn cmd_smti(
    ctx: &mut Ctx<'_>,
    path: &Path,
    out: Option<&Path>,
    forward: Option<&Path>,
    back: Option<&Path>,
) -> Result<i32> {
    let inst = load_instance(path)?;
    let red = to_smti(&inst)?;
    let bytes = match (forward, back) {
        (Some(f), _) => {
            let m = load_matching(&inst, f)?;
            verify::check_feasible(&inst, &m)?;
            serialize_matching(red.instance(), &red.forward(&m))
        }
        (None, Some(b)) => {
            let m = load_matching(red.instance(), b)?;
            verify::check_feasible(red.instance(), &m)?;
            serialize_matching(&inst, &red.back(&m))
        }
        (None, None) => serialize_instance(red.instance()),
    };
    emit(ctx, out, &bytes)?;
    Ok(0)
}
