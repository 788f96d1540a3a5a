//! Deterministic random streams.
//!
//! Every stream is derived from a master seed and a task id, so results do
//! not depend on worker scheduling.

use rand::{Rng, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

pub type TaskRng = Xoshiro256PlusPlus;

/// Independent generator for task `task` under master seed `seed`.
pub fn task_rng(seed: u64, task: u64) -> TaskRng {
    let mut mix = SplitMix64::seed_from_u64(seed);
    let base: u64 = mix.random();
    let mut sm = SplitMix64::seed_from_u64(base ^ task.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    Xoshiro256PlusPlus::from_rng(&mut sm)
}

/// Integer uniform in `[1, bound]`.
pub fn coordinate(rng: &mut TaskRng, bound: u64) -> u64 {
    rng.random_range(1..=bound.max(1))
}
