//! Seeded generators of representations.

use rand::Rng;

use super::Representation;
use crate::premeasure::PreMeasureSpace;
use crate::simple_functions::gen::{random_nonneg_simple, random_simple};

/// Up to `max_len` terms, each with up to 3 summands.
pub fn random_finite_rep(
    space: &PreMeasureSpace,
    rng: &mut impl Rng,
    max_len: usize,
) -> Representation {
    let n = rng.gen_range(0..=max_len);
    Representation::finite(
        space,
        (0..n).map(|_| random_simple(space, rng, 3)).collect(),
    )
}

/// At least one term, every term nonnegative, so `g >= 0`.
pub fn random_nonneg_finite_rep(
    space: &PreMeasureSpace,
    rng: &mut impl Rng,
    max_len: usize,
) -> Representation {
    let n = rng.gen_range(1..=max_len.max(1));
    Representation::finite(
        space,
        (0..n)
            .map(|_| random_nonneg_simple(space, rng, 3))
            .collect(),
    )
}
