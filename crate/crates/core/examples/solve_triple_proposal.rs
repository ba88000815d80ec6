//! Build an instance in code and compare the three algorithms on it.
//!
//! ```text
//! cargo run --example solve_triple_proposal
//! ```

use hrt_mslq::{verify, Algorithm, InstanceBuilder, TieBreakPolicy};

fn main() -> hrt_mslq::Result<()> {
    // h1 ties r1 and r2; h2 and h3 each need someone.
    let inst = InstanceBuilder::new()
        .resident("r1", vec![vec!["h1"], vec!["h2"]])
        .resident("r2", vec![vec!["h1"], vec!["h3"]])
        .hospital("h1", 1, 1, vec![vec!["r1", "r2"]])
        .hospital("h2", 1, 1, vec![vec!["r1"]])
        .hospital("h3", 0, 1, vec![vec!["r2"]])
        .build()?;

    for policy in [TieBreakPolicy::ByIndex, TieBreakPolicy::Seeded(7)] {
        println!("policy {policy:?}");
        for alg in Algorithm::COMPARED {
            let m = alg.solve(&inst, &policy)?;
            let s = verify::score(&inst, &m)?;
            println!("  {alg:<8} {:<18} {}", s.with_decimal(), m.display(&inst));
        }
    }

    let (m, trace) = hrt_mslq::triple_proposal(&inst, &TieBreakPolicy::ByIndex)?;
    println!("\ntriple proposal trace, {} events:", trace.len());
    print!("{}", trace.to_text(&inst));
    assert_eq!(trace.replay(inst.num_residents()), m);
    Ok(())
}
