//! Every stable matching of a small instance, by both oracle methods.

use hrt_mslq::generators::{FamilySpec, QuotaModel, RandomSpec};
use hrt_mslq::oracle::{self, Budget, Method};
use hrt_mslq::verify;

fn main() -> hrt_mslq::Result<()> {
    let inst = FamilySpec::Random(RandomSpec {
        residents: 5,
        hospitals: 3,
        model: QuotaModel::General,
        tie_prob: 0.5,
        seed: 11,
        ..RandomSpec::default()
    })
    .generate()?;

    println!("tie-breakings: {}", oracle::tiebreak_count(&inst));
    println!("assignments:   {}", oracle::exhaustive_count(&inst));

    let by_tb = oracle::enumerate(&inst, Method::TieBreak, Budget::default())?;
    let by_ex = oracle::enumerate(&inst, Method::Exhaustive, Budget::default())?;
    assert_eq!(by_tb.matchings, by_ex.matchings);

    println!("{} stable matchings", by_tb.count());
    for m in &by_tb.matchings {
        println!(
            "  {:<6} {}",
            verify::score(&inst, m)?.to_string(),
            m.display(&inst)
        );
    }
    println!(
        "OPT {}  WST {}",
        by_tb.opt.with_decimal(),
        by_tb.wst.with_decimal()
    );

    match oracle::enumerate(&inst, Method::Auto, Budget::uniform(1)) {
        Err(e) => println!("tiny budget: {e}"),
        Ok(r) => println!("tiny budget still fit: {} matchings", r.count()),
    }
    Ok(())
}
