//! Simple functions over a pre-measure space.
//!
//! A simple function is a finite list of `(aₖ, iₖ)` pairs standing for
//! `Σ aₖ·χ_{λ₀(iₖ)}` on the common domain `F = ⋂ₖ (λ₀¹(iₖ) ∪ λ₀⁰(iₖ))`
//! (the whole ground set for the empty list). Two simple functions are equal
//! when they have the same domain and agree on it.

mod check;
pub mod gen;

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complemented_sets::{PartialRationalFn, Subset};
use crate::premeasure::{Idx, PreMeasureSpace};
use crate::rational::Rational;

pub use check::{check_pis_simple, phi_n_bound_check, pis_basic_lemmas};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SfError {
    #[error("element {0:?} is outside the domain of the simple function")]
    OutsideDomain(String),
    #[error("index {0} is not in the index set")]
    UnknownIndex(u64),
    #[error("function is negative at {x:?} (value {value})")]
    Negative { x: String, value: String },
    #[error("N must be positive")]
    ZeroN,
    #[error("no index names the complemented subset (empty, X)")]
    NoNullIndex,
    #[error("disjoint representation of {0} terms is too large")]
    TooManyTerms(usize),
}

/// `Σ aₖ·χ_{λ₀(iₖ)}`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SimpleFunction {
    terms: Vec<(Rational, Idx)>,
}

impl SimpleFunction {
    pub fn new(terms: Vec<(Rational, Idx)>) -> Self {
        SimpleFunction { terms }
    }

    /// The empty sum: 0 on the whole ground set.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(a: Rational, i: Idx) -> Self {
        SimpleFunction {
            terms: vec![(a, i)],
        }
    }

    pub fn terms(&self) -> &[(Rational, Idx)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = Idx> + '_ {
        self.terms.iter().map(|(_, i)| *i)
    }

    /// Fails on the first index outside the space.
    pub fn validate(&self, space: &PreMeasureSpace) -> Result<(), SfError> {
        match self.indices().find(|&i| !space.contains(i)) {
            Some(i) => Err(SfError::UnknownIndex(i.0)),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for SimpleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, (a, i)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a}, #{})", i.0)?;
        }
        write!(f, "]")
    }
}

/// `F = ⋂ₖ (λ₀¹(iₖ) ∪ λ₀⁰(iₖ))`.
pub fn domain(space: &PreMeasureSpace, v: &SimpleFunction) -> Subset {
    v.indices()
        .map(|i| space.family(i).domain())
        .fold(space.ground().full(), |a, b| a.intersection(&b))
}

/// `Σ aₖ·χ(x)` without checking that `x` is in the domain.
pub(crate) fn raw_value(space: &PreMeasureSpace, v: &SimpleFunction, x: usize) -> Rational {
    v.terms
        .iter()
        .filter(|(_, i)| space.family(*i).pos().contains(x))
        .map(|(a, _)| a.clone())
        .sum()
}

/// `f_v(x)` for `x` (a ground-set position) in the domain.
pub fn eval(space: &PreMeasureSpace, v: &SimpleFunction, x: usize) -> Result<Rational, SfError> {
    if !domain(space, v).contains(x) {
        return Err(SfError::OutsideDomain(
            space.ground().labels().get(x).cloned().unwrap_or_default(),
        ));
    }
    Ok(raw_value(space, v, x))
}

/// `f_v` as a partial function.
pub fn to_partial(space: &PreMeasureSpace, v: &SimpleFunction) -> PartialRationalFn {
    let values = (0..space.ground().len())
        .map(|x| raw_value(space, v, x))
        .collect();
    PartialRationalFn::new(domain(space, v), values)
}

/// Equal domains and equal values on them.
pub fn sf_equal(space: &PreMeasureSpace, v: &SimpleFunction, w: &SimpleFunction) -> bool {
    let d = domain(space, v);
    d == domain(space, w)
        && d.elements()
            .all(|x| raw_value(space, v, x) == raw_value(space, w, x))
}

/// `∫ v dμ = Σ aₖ·μ(iₖ)`.
pub fn integral(space: &PreMeasureSpace, v: &SimpleFunction) -> Rational {
    v.terms.iter().map(|(a, i)| a * space.measure(*i)).sum()
}

/// One term of a disjoint representation: the boolean profile `f` (bit `k`
/// set when term `k` participates), the coefficient `Σ_{f(k)=1} aₖ` and the
/// index `j_f = (⋀_{f(k)=1} iₖ) ∼ (⋁_{f(k)=0} iₖ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointTerm {
    pub profile: u64,
    pub coeff: Rational,
    pub index: Idx,
}

/// A simple function whose complemented subsets are pairwise disjoint, all
/// with domain `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointRep {
    pub terms: Vec<DisjointTerm>,
}

impl DisjointRep {
    pub fn to_simple(&self) -> SimpleFunction {
        SimpleFunction::new(
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), t.index))
                .collect(),
        )
    }
}

const MAX_DISJREP_TERMS: usize = 22;

/// The disjoint representation over all `2ⁿ − 1` nonzero profiles. An empty
/// join (profile all ones) is read as `⋁ₖ (iₖ ∼ iₖ)`, which has empty
/// positive part and domain `F`, so every output term lives on `F`.
pub fn disjrep(space: &PreMeasureSpace, v: &SimpleFunction) -> Result<DisjointRep, SfError> {
    let n = v.len();
    if n == 0 {
        return Ok(DisjointRep { terms: Vec::new() });
    }
    if n > MAX_DISJREP_TERMS {
        return Err(SfError::TooManyTerms(n));
    }
    let idx: Vec<Idx> = v.indices().collect();
    let z = space.null_join(&idx).expect("nonempty");
    let terms = (1u64..(1 << n))
        .map(|profile| {
            let ins = (0..n).filter(|k| profile >> k & 1 == 1).map(|k| idx[k]);
            let outs = (0..n).filter(|k| profile >> k & 1 == 0).map(|k| idx[k]);
            let meet = space.meet_all(ins).expect("profile is nonzero");
            let join = space.join_all(outs).unwrap_or(z);
            let coeff = (0..n)
                .filter(|k| profile >> k & 1 == 1)
                .map(|k| v.terms[k].0.clone())
                .sum();
            DisjointTerm {
                profile,
                coeff,
                index: space.diff(meet, join),
            }
        })
        .collect();
    Ok(DisjointRep { terms })
}

/// Merges repeated indices and drops zero-coefficient terms whose removal
/// does not enlarge the domain. The result is equal to `v`.
pub fn compact(space: &PreMeasureSpace, v: &SimpleFunction) -> SimpleFunction {
    let mut merged: Vec<(Rational, Idx)> = Vec::new();
    for (a, i) in &v.terms {
        match merged.iter_mut().find(|(_, j)| j == i) {
            Some((b, _)) => *b += a,
            None => merged.push((a.clone(), *i)),
        }
    }
    let mut k = 0;
    while k < merged.len() {
        if merged[k].0.is_zero() && merged.len() > 1 {
            let rest = merged
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, (_, i))| space.family(*i).domain())
                .fold(space.ground().full(), |a, b| a.intersection(&b));
            if rest.is_subset_of(&space.family(merged[k].1).domain()) {
                merged.remove(k);
                continue;
            }
        }
        k += 1;
    }
    SimpleFunction::new(merged)
}

pub fn scalar_mul(a: &Rational, v: &SimpleFunction) -> SimpleFunction {
    SimpleFunction::new(v.terms.iter().map(|(b, i)| (a * b, *i)).collect())
}

/// Concatenation.
pub fn add(v: &SimpleFunction, w: &SimpleFunction) -> SimpleFunction {
    let mut terms = v.terms.clone();
    terms.extend(w.terms.iter().cloned());
    SimpleFunction::new(terms)
}

pub fn neg(v: &SimpleFunction) -> SimpleFunction {
    scalar_mul(&-Rational::one(), v)
}

pub fn sub(v: &SimpleFunction, w: &SimpleFunction) -> SimpleFunction {
    add(v, &neg(w))
}

/// The terms of the disjoint representation whose positive part is
/// inhabited, found from the profiles realized by points of the domain, plus
/// `(0, ⋁ₖ(iₖ ∼ iₖ))` to pin the domain. Equal to `disjrep(v)`; the omitted
/// terms have empty positive part and hence measure zero.
pub fn disjrep_inhabited(space: &PreMeasureSpace, v: &SimpleFunction) -> SimpleFunction {
    let v = compact(space, v);
    if v.is_empty() {
        return v;
    }
    let idx: Vec<Idx> = v.indices().collect();
    let z = space.null_join(&idx).expect("nonempty");
    let mut profiles: Vec<Vec<bool>> = Vec::new();
    for x in domain(space, &v).elements() {
        let p: Vec<bool> = idx
            .iter()
            .map(|&i| space.family(i).pos().contains(x))
            .collect();
        if p.iter().any(|&b| b) && !profiles.contains(&p) {
            profiles.push(p);
        }
    }
    let mut terms = vec![(Rational::zero(), z)];
    for p in profiles {
        let ins = idx.iter().zip(&p).filter(|(_, &b)| b).map(|(i, _)| *i);
        let outs = idx.iter().zip(&p).filter(|(_, &b)| !b).map(|(i, _)| *i);
        let meet = space.meet_all(ins).expect("profile is nonzero");
        let join = space.join_all(outs).unwrap_or(z);
        let coeff = v
            .terms
            .iter()
            .zip(&p)
            .filter(|(_, &b)| b)
            .map(|((a, _), _)| a.clone())
            .sum();
        terms.push((coeff, space.diff(meet, join)));
    }
    SimpleFunction::new(terms)
}

fn map_disjoint(
    space: &PreMeasureSpace,
    v: &SimpleFunction,
    f: impl Fn(&Rational) -> Rational,
) -> SimpleFunction {
    let d = disjrep_inhabited(space, v);
    let mapped = SimpleFunction::new(d.terms.iter().map(|(a, i)| (f(a), *i)).collect());
    compact(space, &mapped)
}

/// `|v|`: absolute values of the disjoint coefficients (see
/// [`disjrep_inhabited`]).
pub fn abs_sf(space: &PreMeasureSpace, v: &SimpleFunction) -> SimpleFunction {
    map_disjoint(space, v, |a| a.abs())
}

/// `v ∧ 1`: disjoint coefficients capped at 1.
pub fn meet_one(space: &PreMeasureSpace, v: &SimpleFunction) -> SimpleFunction {
    map_disjoint(space, v, |a| a.min(&Rational::one()).clone())
}

/// `v ∨ w = w + ½(v − w + |v − w|)`.
pub fn sf_join(space: &PreMeasureSpace, v: &SimpleFunction, w: &SimpleFunction) -> SimpleFunction {
    let d = sub(v, w);
    let half = Rational::new(1.into(), 2.into());
    compact(
        space,
        &add(w, &scalar_mul(&half, &add(&d, &abs_sf(space, &d)))),
    )
}

/// `v ∧ w = −((−v) ∨ (−w))`.
pub fn sf_meet(space: &PreMeasureSpace, v: &SimpleFunction, w: &SimpleFunction) -> SimpleFunction {
    neg(&sf_join(space, &neg(v), &neg(w)))
}

/// `Ok` when `f_v >= 0` on its domain, otherwise the first negative point.
pub fn check_nonneg(space: &PreMeasureSpace, v: &SimpleFunction) -> Result<(), SfError> {
    for x in domain(space, v).elements() {
        let value = raw_value(space, v, x);
        if value.is_negative() {
            return Err(SfError::Negative {
                x: space.ground().label(x).to_string(),
                value: value.to_string(),
            });
        }
    }
    Ok(())
}

/// For `f_v >= 0`, an index whose complemented subset lives inside the
/// domain of `v`, whose negative part only holds points with
/// `f_v < 1/N`, and whose measure is at most `2N·∫v`.
///
/// With `(aₖ, iₖ)` the disjoint representation and `z = ⋁ₖ(iₖ ∼ iₖ)`: when
/// every term with inhabited positive part has `aₖ < 1/N` the result is `z`;
/// otherwise it is `(⋁_{aₖ > 1/(2N)} iₖ) ∼ z`. Comparisons are exact.
pub fn phi_n(space: &PreMeasureSpace, v: &SimpleFunction, n: u64) -> Result<Idx, SfError> {
    if n == 0 {
        return Err(SfError::ZeroN);
    }
    check_nonneg(space, v)?;
    let v = compact(space, v);
    if v.is_empty() {
        let null = crate::complemented_sets::ComplementedSubset::new(
            space.ground().empty_subset(),
            space.ground().full(),
        )
        .expect("disjoint");
        return space.find_index(&null).ok_or(SfError::NoNullIndex);
    }
    let d = disjrep(space, &v)?;
    let idx: Vec<Idx> = v.indices().collect();
    let z = space.null_join(&idx).expect("nonempty");
    let inv_n = Rational::new(1.into(), n.into());
    let inv_2n = Rational::new(1.into(), (2 * n).into());
    let all_small = d
        .terms
        .iter()
        .filter(|t| !space.family(t.index).pos().is_empty())
        .all(|t| t.coeff < inv_n);
    if all_small {
        return Ok(z);
    }
    let big = d.terms.iter().filter(|t| t.coeff > inv_2n).map(|t| t.index);
    let top = space.join_all(big).expect("some term reaches 1/N");
    Ok(space.diff(top, z))
}
