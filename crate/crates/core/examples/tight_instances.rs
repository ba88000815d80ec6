//! The worst-case families: what each algorithm scores against OPT and WST.

use hrt_mslq::generators::FamilySpec;
use hrt_mslq::oracle::{self, bound_for, BoundKind};
use hrt_mslq::{verify, Algorithm};

fn main() -> hrt_mslq::Result<()> {
    let specs = [
        FamilySpec::MarriageGap,
        FamilySpec::MarriageTight,
        FamilySpec::UniformGap { lower: 1, upper: 3 },
        FamilySpec::UniformTight { lower: 1, upper: 2 },
        FamilySpec::GeneralGap { n: 3 },
        FamilySpec::StrictGap { n: 4 },
        FamilySpec::PhiTight { n: 4 },
    ];
    for spec in specs {
        let inst = spec.generate()?;
        let (opt, wst) = oracle::opt_wst(&inst)?;
        let m = Algorithm::Triple.solve(&inst, &spec.adversarial_policy())?;
        let alg = verify::score(&inst, &m)?;
        println!("{spec}");
        println!("  OPT {opt}  WST {wst}  triple {alg}");
        println!(
            "  OPT/WST {} <= {}",
            opt.ratio(&wst).unwrap(),
            bound_for(&inst, BoundKind::Gap)
        );
        println!(
            "  OPT/ALG {} <= {}",
            opt.ratio(&alg).unwrap(),
            bound_for(&inst, BoundKind::Approx).with_decimal()
        );
    }
    Ok(())
}
