//! A small ratio sweep, written as CSV to stdout with a summary on stderr.

use hrt_mslq::bench::{self, BenchConfig};
use hrt_mslq::generators::{FamilyParams, QuotaModel};

fn main() -> hrt_mslq::Result<()> {
    let cfg = BenchConfig {
        families: vec!["random".into(), "uniform_tight".into()],
        params: FamilyParams {
            n: 6,
            hospitals: 4,
            model: QuotaModel::Uniform,
            lower: 1,
            upper: 2,
            ..FamilyParams::default()
        },
        trials: 20,
        seed: 1,
        ..BenchConfig::default()
    };
    let rows = bench::run(&cfg)?;
    bench::write_csv(&rows, std::io::stdout(), false)?;
    for s in bench::summarize(&rows) {
        eprintln!(
            "{:<14} {:<8} max OPT/ALG {:<6} max OPT/WST {:<6} violations {}",
            s.family,
            s.algorithm,
            s.max_ratio_opt_alg.map_or("-".into(), |r| r.to_string()),
            s.max_ratio_opt_wst.map_or("-".into(), |r| r.to_string()),
            s.violations
        );
    }
    Ok(())
}
