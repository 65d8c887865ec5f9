//! Modulated reals: rational Cauchy sequences carrying an explicit
//! convergence modulus, series with caller-supplied tail certificates, and
//! the Cantor-pairing rearrangement of double series.

mod pairing;
mod real;
mod series;

pub use pairing::{
    cantor_pair, cantor_unpair, checked_cantor_pair, diagonal_index, index_pair, pair_index,
};
pub use real::{Comparison, ModulatedReal, Modulus, ModulusViolation};
pub use series::{
    limit, partial_sum, rearrange_double, rearranged_modulus_nonneg, series_limit, sum_series,
    term_fn, unflatten_check, AbsModuli, CauchyViolation, DoubleSeq, EntryFn, ModulatedRealSeq,
    Rearranged, RowModuli, TermFn, Unflattened,
};

pub use crate::rational::Rational;

/// `real_from_rational(q)`: the constant sequence `q`.
pub fn real_from_rational(q: Rational) -> ModulatedReal {
    ModulatedReal::from_rational(q)
}
