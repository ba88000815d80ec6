//! Marriage-model instance as SMTI: the score is preserved and every
//! `[0, 1]` hospital gains a private extra man.

use hrt_mslq::generators::{families, to_smti};
use hrt_mslq::oracle;
use hrt_mslq::verify;

fn main() -> hrt_mslq::Result<()> {
    let inst = families::marriage_tight();
    let red = to_smti(&inst)?;
    let smti = red.instance();
    for &(man, woman) in red.extra_men() {
        println!(
            "extra man {} for {}",
            smti.resident_name(man),
            smti.hospital_name(woman)
        );
    }

    let report = oracle::enumerate_stable_by_tiebreak(&inst, 1_000)?;
    for m in &report.matchings {
        let f = red.forward(m);
        println!(
            "{}  score {}  ->  {}  size {}  stable {}",
            m.display(&inst),
            verify::score(&inst, m)?,
            f.display(smti),
            verify::score(smti, &f)?,
            verify::is_stable(smti, &f)?
        );
        assert_eq!(&red.back(&f), m);
    }
    Ok(())
}
