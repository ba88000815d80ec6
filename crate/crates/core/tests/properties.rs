//! Randomized properties over small instances of every quota model.

mod common;

use std::collections::HashMap;

use common::small_instance;
use hrt_mslq::io::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use hrt_mslq::oracle::{self, phi, Budget, Method, OracleReport};
use hrt_mslq::solvers::Event;
use hrt_mslq::{verify, Algorithm, Matching, TieBreakPolicy};
use proptest::prelude::*;

fn policy() -> impl Strategy<Value = TieBreakPolicy> {
    prop_oneof![
        Just(TieBreakPolicy::ByIndex),
        any::<u64>().prop_map(TieBreakPolicy::Seeded)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_algorithm_is_stable(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        for alg in Algorithm::COMPARED {
            let m = alg.solve(&inst, &p).unwrap();
            prop_assert!(verify::is_stable(&inst, &m).unwrap(), "{alg} unstable on seed {seed}");
        }
    }

    #[test]
    fn triple_is_deterministic(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        let (a, ta) = hrt_mslq::triple_proposal(&inst, &p).unwrap();
        let (b, tb) = hrt_mslq::triple_proposal(&inst, &p).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(ta.to_text(&inst), tb.to_text(&inst));
    }

    #[test]
    fn at_most_three_proposals_per_pair(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        let (m, trace) = hrt_mslq::triple_proposal(&inst, &p).unwrap();
        let mut seen: HashMap<(usize, usize), u8> = HashMap::new();
        for e in trace.events() {
            if let Event::Propose { resident, hospital, count } = *e {
                let c = seen.entry((resident, hospital)).or_default();
                *c += 1;
                prop_assert_eq!(*c, count);
                prop_assert!(count <= 3);
            }
        }
        prop_assert_eq!(trace.replay(inst.num_residents()), m);
    }

    #[test]
    fn triple_satisfies_priority_properties(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        let (m, _) = hrt_mslq::triple_proposal(&inst, &p).unwrap();
        prop_assert_eq!(verify::check_priority_properties(&inst, &m).unwrap(), vec![]);
    }

    #[test]
    fn io_round_trips(seed in any::<u64>()) {
        let inst = small_instance(seed);
        let bytes = serialize_instance(&inst);
        let again = parse_instance(&bytes).unwrap();
        prop_assert_eq!(serialize_instance(&again), bytes);
        let m = Algorithm::Baseline.solve(&inst, &TieBreakPolicy::ByIndex).unwrap();
        prop_assert_eq!(parse_matching(&inst, &serialize_matching(&inst, &m)).unwrap(), m);
    }

    #[test]
    fn phi_is_monotone(n in 1usize..200) {
        prop_assert!(phi(n).unwrap() <= phi(n + 1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn scores_sit_between_wst_and_opt(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        let report = stable_set(&inst);
        prop_assume!(report.is_some());
        let report = report.unwrap();
        for alg in Algorithm::COMPARED {
            let m = alg.solve(&inst, &p).unwrap();
            let s = verify::score(&inst, &m).unwrap();
            prop_assert!(report.wst <= s && s <= report.opt);
            prop_assert!(report.matchings.contains(&m));
        }
    }

    #[test]
    fn no_short_augmenting_path_against_any_stable(seed in any::<u64>(), p in policy()) {
        let inst = small_instance(seed);
        let (m, _) = hrt_mslq::triple_proposal(&inst, &p).unwrap();
        let report = stable_set(&inst);
        prop_assume!(report.is_some());
        let report = report.unwrap();
        for n in &report.matchings {
            prop_assert_eq!(verify::find_aug_path3(&inst, &m, n).unwrap(), None);
            prop_assert_eq!(brute_aug_path3(&inst, &m, n), false);
        }
    }
}

fn stable_set(inst: &hrt_mslq::Instance) -> Option<OracleReport> {
    match oracle::enumerate(inst, Method::Auto, Budget::default()) {
        Ok(r) => Some(r),
        Err(hrt_mslq::Error::BudgetExceeded { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

/// Same search as the verifier, written as four nested loops.
fn brute_aug_path3(inst: &hrt_mslq::Instance, m: &Matching, n: &Matching) -> bool {
    let loads = m.loads(inst.num_hospitals());
    let (rs, hs) = (inst.num_residents(), inst.num_hospitals());
    (0..rs).any(|r1| {
        (0..hs).any(|h1| {
            (0..rs).any(|r2| {
                (0..hs).any(|h2| {
                    r1 != r2
                        && h1 != h2
                        && m.hospital_of(r1).is_none()
                        && n.contains(r1, h1)
                        && m.contains(r2, h1)
                        && n.contains(r2, h2)
                        && loads[h2] < inst.quota(h2).lower
                })
            })
        })
    })
}

#[test]
fn heavy_tie_instance_falls_back_to_exhaustive() {
    let inst = small_instance(10481370779635831146);
    assert!(oracle::tiebreak_count(&inst) > Budget::default().tiebreakings);
    let report = stable_set(&inst).expect("exhaustive fits");
    assert_eq!(report.method, Method::Exhaustive);
    let m = Algorithm::Triple
        .solve(&inst, &TieBreakPolicy::ByIndex)
        .unwrap();
    assert!(report.matchings.contains(&m));
}
