//! Seeded generators of simple functions for the checkers and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{compact, disjrep, domain, SimpleFunction};
use crate::premeasure::{Idx, PreMeasureSpace};
use crate::rational::{int, ratio, Rational};

/// `{-2, -1, 0, 1, 2}`.
pub fn small_integer_grid() -> Vec<Rational> {
    (-2..=2).map(int).collect()
}

/// A rational `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_nonneg_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(0..=6), rng.gen_range(1..=4))
}

pub fn random_index(space: &PreMeasureSpace, rng: &mut impl Rng) -> Idx {
    Idx(rng.gen_range(0..space.index_count()))
}

/// Up to `max_terms` terms with random indices and coefficients.
pub fn random_simple(
    space: &PreMeasureSpace,
    rng: &mut impl Rng,
    max_terms: usize,
) -> SimpleFunction {
    let n = rng.gen_range(0..=max_terms);
    SimpleFunction::new(
        (0..n)
            .map(|_| (random_rational(rng), random_index(space, rng)))
            .collect(),
    )
}

/// Like [`random_simple`] with nonnegative coefficients, so `f_v >= 0`.
pub fn random_nonneg_simple(
    space: &PreMeasureSpace,
    rng: &mut impl Rng,
    max_terms: usize,
) -> SimpleFunction {
    let n = rng.gen_range(1..=max_terms.max(1));
    SimpleFunction::new(
        (0..n)
            .map(|_| (random_nonneg_rational(rng), random_index(space, rng)))
            .collect(),
    )
}

/// Every function with at most `max_terms` terms drawn from `coeffs × I`
/// (ordered term lists, so `[(a, i), (b, j)]` and `[(b, j), (a, i)]` both
/// appear).
pub fn grid_functions(
    space: &PreMeasureSpace,
    coeffs: &[Rational],
    max_terms: usize,
) -> Vec<SimpleFunction> {
    let singles: Vec<(Rational, Idx)> = space
        .indices()
        .flat_map(|i| coeffs.iter().map(move |a| (a.clone(), i)))
        .collect();
    let mut layer = vec![SimpleFunction::zero()];
    let mut out = layer.clone();
    for _ in 0..max_terms {
        let mut next = Vec::with_capacity(layer.len() * singles.len());
        for v in &layer {
            for t in &singles {
                let mut terms = v.terms().to_vec();
                terms.push(t.clone());
                next.push(SimpleFunction::new(terms));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A function equal to `v` built by splitting a coefficient, reordering,
/// padding with a zero term over an index already present, or passing to the
/// disjoint representation.
pub fn equal_variant(
    space: &PreMeasureSpace,
    v: &SimpleFunction,
    rng: &mut impl Rng,
) -> SimpleFunction {
    let mut terms = v.terms().to_vec();
    match rng.gen_range(0..5) {
        0 if !terms.is_empty() => {
            let k = rng.gen_range(0..terms.len());
            let part = random_rational(rng);
            let (a, i) = terms[k].clone();
            terms[k] = (part.clone(), i);
            terms.push((a - part, i));
        }
        1 => terms.shuffle(rng),
        2 if !terms.is_empty() => {
            let i = terms[rng.gen_range(0..terms.len())].1;
            let at = rng.gen_range(0..=terms.len());
            terms.insert(at, (int(0), i));
        }
        3 if terms.len() <= 6 => {
            return disjrep(space, v).expect("small").to_simple();
        }
        4 => {
            // a zero term on an index whose domain contains the domain of v
            let f = domain(space, v);
            let covering: Vec<Idx> = space
                .indices()
                .filter(|&i| f.is_subset_of(&space.family(i).domain()))
                .collect();
            if let Some(&i) = covering.choose(rng) {
                terms.push((int(0), i));
            }
        }
        _ => return compact(space, v),
    }
    SimpleFunction::new(terms)
}
