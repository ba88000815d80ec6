//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use hrt_mslq::generators::{QuotaModel, RandomSpec};
use hrt_mslq::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODELS: [QuotaModel; 4] = [
    QuotaModel::General,
    QuotaModel::Uniform,
    QuotaModel::Marriage,
    QuotaModel::MasterList,
];

/// Small mixed-class instance: n <= 6 residents, m <= 5 hospitals.
pub fn small_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let model = MODELS[(seed % 4) as usize];
    small_instance_of(model, 6, 5, seed, &mut rng)
}

pub fn small_instance_of(
    model: QuotaModel,
    max_n: usize,
    max_m: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> Instance {
    let residents = rng.gen_range(1..=max_n);
    let hospitals = rng.gen_range(1..=max_m);
    let upper = rng.gen_range(1..=residents.min(3));
    let spec = RandomSpec {
        residents,
        hospitals,
        model,
        lower: rng.gen_range(1..=upper),
        upper,
        tie_prob: rng.gen_range(0.2..0.6),
        max_list: rng.gen_range(1..=hospitals),
        seed,
    };
    spec.generate().expect("valid random spec")
}
