//! The completion of `S(I)` under the 1-norm.
//!
//! A representation is a sequence `α(1), α(2), ...` of simple functions
//! with `Σ ∫|α(n)|` finite. That sum is witnessed by a tail modulus `T`:
//! `Σ_{n>T(p)} ∫|α(n)| <= 2^-p`. It stands for `g_α = Σ g_{α(n)}` on the
//! points where every term is defined and the series converges absolutely.
//! Pointwise evaluation off finite support needs a second certificate of
//! the same shape at each point.

mod check;
pub mod gen;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complemented_sets::Subset;
use crate::modulated_reals::{
    index_pair, rearranged_modulus_nonneg, series_limit, term_fn, ModulatedReal, Modulus, RowModuli,
};
use crate::premeasure::PreMeasureSpace;
use crate::rational::{int, log2_ceil_abs, pow2_neg, Rational};
use crate::simple_functions::{
    abs_sf, add, compact, domain, integral, meet_one, neg, raw_value, scalar_mul, sub,
    SimpleFunction,
};

pub use check::check_pis_completion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("{x:?} is outside the domain of term {term}")]
    OutsideDomain { x: String, term: u64 },
    #[error("{0:?} is outside the domain of the pointwise certificate")]
    Uncertified(String),
    #[error("pointwise evaluation off finite support needs a pointwise tail certificate")]
    MissingCertificate,
    #[error("geometric ratio {0} does not satisfy |r| < 1")]
    Ratio(String),
    #[error("operation needs a finitely supported representation")]
    InfiniteSupport,
    #[error("tail certificate fails at precision {precision}: {detail}")]
    Tail { precision: u32, detail: String },
}

pub type TermMap = Arc<dyn Fn(u64) -> SimpleFunction + Send + Sync>;
/// `(x, p) ↦ N` with `Σ_{n>N} |f_{α(n)}(x)| <= 2^-p`.
pub type PointTail = Arc<dyn Fn(usize, u32) -> u64 + Send + Sync>;

/// A pointwise tail certificate, valid at the points of `domain`, each of
/// which lies in the domain of every term.
#[derive(Clone)]
pub struct PointwiseTail {
    pub domain: Subset,
    pub tail: PointTail,
}

struct Inner {
    space: PreMeasureSpace,
    term: TermMap,
    tail: Modulus,
    support: Option<u64>,
    pointwise: Option<PointwiseTail>,
    cache: Mutex<HashMap<u64, SimpleFunction>>,
    // compacted partial sums S_0, S_1, ...
    prefix: Mutex<Vec<SimpleFunction>>,
}

/// An element of `I₁`; cheap to clone, terms are memoized.
#[derive(Clone)]
pub struct Representation(Arc<Inner>);

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.support {
            Some(s) => {
                let terms: Vec<SimpleFunction> = (1..=s).map(|n| self.term(n)).collect();
                f.debug_struct("Representation")
                    .field("support", &terms)
                    .finish()
            }
            None => f
                .debug_struct("Representation")
                .field("first", &self.term(1))
                .field("tail", &self.0.tail)
                .finish(),
        }
    }
}

impl Representation {
    /// A representation from a term map and its certificates. `support`
    /// promises `α(n) = 0` for `n` beyond it; the tail modulus should be
    /// strictly increasing.
    pub fn from_stream(
        space: &PreMeasureSpace,
        term: TermMap,
        tail: Modulus,
        support: Option<u64>,
        pointwise: Option<PointwiseTail>,
    ) -> Self {
        Representation(Arc::new(Inner {
            space: space.clone(),
            term,
            tail,
            support,
            pointwise,
            cache: Mutex::new(HashMap::new()),
            prefix: Mutex::new(vec![SimpleFunction::zero()]),
        }))
    }

    /// `(α(1), ..., α(N), 0, 0, ...)`.
    pub fn finite(space: &PreMeasureSpace, terms: Vec<SimpleFunction>) -> Self {
        let n = terms.len() as u64;
        let dom = terms
            .iter()
            .map(|v| domain(space, v))
            .fold(space.ground().full(), |a, b| a.intersection(&b));
        let terms = Arc::new(terms);
        Self::from_stream(
            space,
            Arc::new(move |k| terms[(k - 1) as usize].clone()),
            Modulus::new(move |p| n + p as u64),
            Some(n),
            Some(PointwiseTail {
                domain: dom,
                tail: Arc::new(move |_, p| n + p as u64),
            }),
        )
    }

    pub fn zero(space: &PreMeasureSpace) -> Self {
        Self::finite(space, Vec::new())
    }

    /// `h(v) = (v, 0, 0, ...)`.
    pub fn embed(space: &PreMeasureSpace, v: &SimpleFunction) -> Self {
        Self::finite(space, vec![v.clone()])
    }

    /// `α(n) = rⁿ·v` for `|r| < 1`, summing to `r/(1 − r)·v`.
    pub fn geometric(
        space: &PreMeasureSpace,
        base: &SimpleFunction,
        ratio: &Rational,
    ) -> Result<Self, CompletionError> {
        let r = ratio.abs();
        if r >= Rational::one() {
            return Err(CompletionError::Ratio(ratio.to_string()));
        }
        let mass = integral(space, &abs_sf(space, base));
        let t = r.clone();
        let tail = Modulus::new(move |p| geometric_index(&t, &mass, p) + p as u64);
        let dom = domain(space, base);
        let heights: Vec<Rational> = (0..space.ground().len())
            .map(|x| raw_value(space, base, x).abs())
            .collect();
        let t = r.clone();
        let pointwise = PointwiseTail {
            domain: dom,
            tail: Arc::new(move |x, p| geometric_index(&t, &heights[x], p) + p as u64),
        };
        let (b, q) = (base.clone(), ratio.clone());
        Ok(Self::from_stream(
            space,
            Arc::new(move |n| scalar_mul(&pow(&q, n), &b)),
            tail,
            None,
            Some(pointwise),
        ))
    }

    pub fn space(&self) -> &PreMeasureSpace {
        &self.0.space
    }

    /// `α(n)`, 1-based.
    pub fn term(&self, n: u64) -> SimpleFunction {
        assert!(n >= 1, "terms are 1-based");
        if self.0.support.is_some_and(|s| n > s) {
            return SimpleFunction::zero();
        }
        if let Some(v) = self.0.cache.lock().unwrap().get(&n) {
            return v.clone();
        }
        let v = (self.0.term)(n);
        self.0.cache.lock().unwrap().insert(n, v.clone());
        v
    }

    pub fn tail_modulus(&self) -> &Modulus {
        &self.0.tail
    }

    pub fn tail(&self, p: u32) -> u64 {
        self.0.tail.at(p)
    }

    pub fn support(&self) -> Option<u64> {
        self.0.support
    }

    pub fn pointwise(&self) -> Option<&PointwiseTail> {
        self.0.pointwise.as_ref()
    }

    /// `α(1) + ... + α(n)`, compacted.
    pub fn prefix_sum(&self, n: u64) -> SimpleFunction {
        let n = match self.0.support {
            Some(s) => n.min(s),
            None => n,
        } as usize;
        loop {
            let (len, last) = {
                let prefix = self.0.prefix.lock().unwrap();
                if prefix.len() > n {
                    return prefix[n].clone();
                }
                (prefix.len(), prefix[prefix.len() - 1].clone())
            };
            let next = compact(&self.0.space, &add(&last, &self.term(len as u64)));
            let mut prefix = self.0.prefix.lock().unwrap();
            if prefix.len() == len {
                prefix.push(next);
            }
        }
    }

    /// `ν₀(α)` for a finitely supported representation: the points in the
    /// domain of every term.
    pub fn finite_domain(&self) -> Option<Subset> {
        let s = self.0.support?;
        Some(
            (1..=s)
                .map(|n| domain(&self.0.space, &self.term(n)))
                .fold(self.0.space.ground().full(), |a, b| a.intersection(&b)),
        )
    }

    /// Spot-checks the tail certificate for `p <= max_p`: the modulus is
    /// strictly increasing and the next `window` terms past `T(p)` carry at
    /// most `2^-p` of `Σ ∫|α(n)|`.
    pub fn check_tail(&self, max_p: u32, window: u64) -> Result<(), CompletionError> {
        let space = &self.0.space;
        for p in 0..=max_p {
            let t = self.tail(p);
            if self.tail(p + 1) <= t {
                return Err(CompletionError::Tail {
                    precision: p,
                    detail: format!("T({p}) = {t} >= T({}) = {}", p + 1, self.tail(p + 1)),
                });
            }
            let mass: Rational = (t + 1..=t + window)
                .map(|n| integral(space, &abs_sf(space, &self.term(n))))
                .sum();
            if mass > pow2_neg(p) {
                return Err(CompletionError::Tail {
                    precision: p,
                    detail: format!("terms {}..={} carry {mass}", t + 1, t + window),
                });
            }
        }
        Ok(())
    }
}

fn pow(q: &Rational, n: u64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= q;
    }
    out
}

/// Smallest `N` with `r^(N+1)/(1 − r)·c <= 2^-p`, for `0 <= r < 1`.
fn geometric_index(r: &Rational, c: &Rational, p: u32) -> u64 {
    let eps = pow2_neg(p);
    let scale = c / (Rational::one() - r);
    let mut n = 0;
    let mut rn = r.clone();
    while &rn * &scale > eps {
        rn *= r;
        n += 1;
    }
    n
}

/// `ν₀` membership for `x` together with the pointwise sum.
pub fn eval_rep(alpha: &Representation, x: usize) -> Result<ModulatedReal, CompletionError> {
    let space = alpha.space();
    let label = || space.ground().label(x).to_string();
    if let Some(s) = alpha.support() {
        let mut total = Rational::zero();
        for n in 1..=s {
            let v = alpha.term(n);
            if !domain(space, &v).contains(x) {
                return Err(CompletionError::OutsideDomain {
                    x: label(),
                    term: n,
                });
            }
            total += raw_value(space, &v, x);
        }
        return Ok(ModulatedReal::from_rational(total));
    }
    let pw = alpha
        .pointwise()
        .ok_or(CompletionError::MissingCertificate)?;
    if !pw.domain.contains(x) {
        return Err(CompletionError::Uncertified(label()));
    }
    let a = alpha.clone();
    let tail = pw.tail.clone();
    Ok(series_limit(
        term_fn(move |n| ModulatedReal::from_rational(raw_value(a.space(), &a.term(n), x))),
        Modulus::new(move |p| tail(x, p)),
    ))
}

/// `∫₁α = Σ ∫α(n)`.
pub fn integral_rep(alpha: &Representation) -> ModulatedReal {
    if let Some(s) = alpha.support() {
        let total = (1..=s)
            .map(|n| integral(alpha.space(), &alpha.term(n)))
            .sum();
        return ModulatedReal::from_rational(total);
    }
    let a = alpha.clone();
    series_limit(
        term_fn(move |n| ModulatedReal::from_rational(integral(a.space(), &a.term(n)))),
        alpha.tail_modulus().clone(),
    )
}

/// `Σ ∫|α(n)|`, the quantity the tail modulus controls.
pub fn abs_series(alpha: &Representation) -> ModulatedReal {
    let a = alpha.clone();
    let f = move |n| {
        let s = a.space();
        integral(s, &abs_sf(s, &a.term(n)))
    };
    if let Some(s) = alpha.support() {
        return ModulatedReal::from_rational((1..=s).map(f).sum());
    }
    series_limit(
        term_fn(move |n| ModulatedReal::from_rational(f(n))),
        alpha.tail_modulus().clone(),
    )
}

fn combine_pointwise(
    a: &Representation,
    b: &Representation,
    f: impl Fn(u64, u64) -> u64 + Send + Sync + 'static,
    shift: u32,
) -> Option<PointwiseTail> {
    let (pa, pb) = (a.pointwise()?.clone(), b.pointwise()?.clone());
    Some(PointwiseTail {
        domain: pa.domain.intersection(&pb.domain),
        tail: Arc::new(move |x, p| f((pa.tail)(x, p + shift), (pb.tail)(x, p + shift))),
    })
}

fn map_pointwise(
    a: &Representation,
    f: impl Fn(u64) -> u64 + Send + Sync + 'static,
    shift: u32,
) -> Option<PointwiseTail> {
    let pa = a.pointwise()?.clone();
    Some(PointwiseTail {
        domain: pa.domain,
        tail: Arc::new(move |x, p| f((pa.tail)(x, p + shift))),
    })
}

/// `(α(1), β(1), α(2), β(2), ...)`, with tail `p ↦ 2·max(T_α(p+1), T_β(p+1))`.
pub fn rep_add(alpha: &Representation, beta: &Representation) -> Representation {
    let (a, b) = (alpha.clone(), beta.clone());
    let term: TermMap = Arc::new(move |n| {
        if n % 2 == 1 {
            a.term(n.div_ceil(2))
        } else {
            b.term(n / 2)
        }
    });
    let (ta, tb) = (alpha.tail_modulus().clone(), beta.tail_modulus().clone());
    let support = match (alpha.support(), beta.support()) {
        (Some(s), Some(t)) => Some(2 * s.max(t)),
        _ => None,
    };
    Representation::from_stream(
        alpha.space(),
        term,
        Modulus::new(move |p| 2 * ta.at(p + 1).max(tb.at(p + 1))),
        support,
        combine_pointwise(alpha, beta, |s, t| 2 * s.max(t), 1),
    )
}

/// `(a·α(n))`, with tail `p ↦ T(p + k)` where `|a| <= 2^k`.
pub fn rep_scale(a: &Rational, alpha: &Representation) -> Representation {
    let k = log2_ceil_abs(a);
    let (s, q) = (alpha.clone(), a.clone());
    let t = alpha.tail_modulus().clone();
    Representation::from_stream(
        alpha.space(),
        Arc::new(move |n| scalar_mul(&q, &s.term(n))),
        Modulus::new(move |p| t.at(p + k)),
        alpha.support(),
        map_pointwise(alpha, |t| t, k),
    )
}

pub fn rep_neg(alpha: &Representation) -> Representation {
    rep_scale(&int(-1), alpha)
}

pub fn rep_sub(alpha: &Representation, beta: &Representation) -> Representation {
    rep_add(alpha, &rep_neg(beta))
}

/// The block pattern `(φ(S_1), α(1), −α(1), φ(S_2) − φ(S_1), α(2), −α(2), ...)`
/// for a 1-Lipschitz `φ` with `φ(0) = 0`. Each block is dominated by
/// `3|α(m)|`, so `p ↦ 3·T(p+2) + 3` is a tail modulus.
fn triple_pattern(
    alpha: &Representation,
    phi: fn(&PreMeasureSpace, &SimpleFunction) -> SimpleFunction,
) -> Representation {
    let a = alpha.clone();
    let term: TermMap = Arc::new(move |n| {
        let m = n.div_ceil(3);
        let s = a.space();
        match n % 3 {
            1 => {
                let hi = phi(s, &a.prefix_sum(m));
                if m == 1 {
                    hi
                } else {
                    compact(s, &sub(&hi, &phi(s, &a.prefix_sum(m - 1))))
                }
            }
            2 => a.term(m),
            _ => neg(&a.term(m)),
        }
    });
    let t = alpha.tail_modulus().clone();
    Representation::from_stream(
        alpha.space(),
        term,
        Modulus::new(move |p| 3 * t.at(p + 2) + 3),
        alpha.support().map(|s| 3 * s),
        map_pointwise(alpha, |t| 3 * t + 3, 2),
    )
}

/// `|α|`.
pub fn rep_abs(alpha: &Representation) -> Representation {
    triple_pattern(alpha, abs_sf)
}

/// `∧₁(α)`.
pub fn rep_meet_one(alpha: &Representation) -> Representation {
    triple_pattern(alpha, meet_one)
}

/// `‖α‖₁ = ∫₁|α|`.
pub fn norm1(alpha: &Representation) -> ModulatedReal {
    integral_rep(&rep_abs(alpha))
}

/// A representation together with its norm.
#[derive(Clone)]
pub struct NormedClass {
    pub rep: Representation,
    pub cached_norm: ModulatedReal,
}

impl NormedClass {
    pub fn new(rep: Representation) -> Self {
        let cached_norm = norm1(&rep);
        NormedClass { rep, cached_norm }
    }
}

/// Outcome of [`eq_int`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntEq {
    /// `∫|α − β| <= 2^-p`; `exact` when the norm is exactly 0.
    Equal { exact: bool },
    /// `∫|α − β| > 0`.
    Distinct,
}

/// Semi-decides `α =_∫ β` at precision `p`.
pub fn eq_int(alpha: &Representation, beta: &Representation, p: u32) -> IntEq {
    let d = norm1(&rep_sub(alpha, beta));
    if let Some(q) = d.as_exact() {
        return if q.is_zero() {
            IntEq::Equal { exact: true }
        } else {
            IntEq::Distinct
        };
    }
    let eps = pow2_neg(p + 2);
    if d.approx_to(p + 2) > eps {
        IntEq::Distinct
    } else {
        IntEq::Equal { exact: false }
    }
}

/// `(α(1) + ... + α(N), α(N+1), α(N+2), ...)` with `N = T(n+1)`, so that
/// `Σ ∫|β(k)| <= ∫|α| + 2^-n`.
pub fn compress(alpha: &Representation, n: u32) -> Representation {
    let big_n = alpha.tail(n + 1);
    let a = alpha.clone();
    let term: TermMap = Arc::new(move |k| {
        if k == 1 {
            a.prefix_sum(big_n)
        } else {
            a.term(big_n + k - 1)
        }
    });
    let t = alpha.tail_modulus().clone();
    Representation::from_stream(
        alpha.space(),
        term,
        Modulus::new(move |p| t.at(p) + 1),
        alpha.support().map(|s| s.saturating_sub(big_n) + 1),
        map_pointwise(alpha, |t| t + 1, 0),
    )
}

/// `n ↦ Γ(n)`, 1-based.
pub type RepStream = Arc<dyn Fn(u64) -> Representation + Send + Sync>;

/// Modulus `M'` for the limit in [`lebesgue_sum`]:
/// `‖α − Σ_{n<=N} Γ(n)‖₁ <= 2^-p` for `N >= M'(p) = max(M(p+1), p+1)`.
pub fn lebesgue_modulus(outer_tail: &Modulus) -> Modulus {
    let m = outer_tail.clone();
    Modulus::new(move |p| m.at(p + 1).max(p as u64 + 1))
}

/// A single representation of `Σ_n Γ(n)`, given `outer_tail` with
/// `Σ_{n>M(p)} ‖Γ(n)‖₁ <= 2^-p`.
///
/// Each `Γ(n)` is compressed at precision `n` and the resulting double
/// sequence is flattened along the Cantor enumeration. `pointwise_outer`,
/// when given, bounds `Σ_{n>N} Σ_k |f_{Γ(n)(k)}(x)|` on its domain and makes
/// the result pointwise evaluable there.
///
/// # Panics
///
/// Pointwise evaluation panics if some `Γ(n)` lacks a pointwise
/// certificate while `pointwise_outer` is given.
pub fn lebesgue_sum(
    space: &PreMeasureSpace,
    gamma: RepStream,
    outer_tail: Modulus,
    pointwise_outer: Option<PointwiseTail>,
) -> Representation {
    let rows: Arc<Mutex<HashMap<u64, Representation>>> = Arc::new(Mutex::new(HashMap::new()));
    let beta = move |n: u64| -> Representation {
        if let Some(r) = rows.lock().unwrap().get(&n) {
            return r.clone();
        }
        let r = compress(&gamma(n), u32::try_from(n).expect("row index"));
        rows.lock().unwrap().insert(n, r.clone());
        r
    };
    let beta = Arc::new(beta);
    let b = beta.clone();
    let term: TermMap = Arc::new(move |m| {
        let (n, k) = index_pair(m);
        b(n).term(k)
    });
    let b = beta.clone();
    // a finitely supported row needs no tail beyond its support
    let row_modulus: RowModuli = Arc::new(move |n| {
        let row = b(n);
        match row.support() {
            Some(s) => Modulus::new(move |_| s),
            None => row.tail_modulus().clone(),
        }
    });
    let outer = lebesgue_modulus(&outer_tail);
    let tail = rearranged_modulus_nonneg(row_modulus, outer);
    let pointwise = pointwise_outer.map(|pw| {
        let b = beta.clone();
        let outer = pw.tail.clone();
        PointwiseTail {
            domain: pw.domain,
            tail: Arc::new(move |x, p| {
                let b = b.clone();
                let rows: RowModuli = Arc::new(move |n| {
                    let row = b(n);
                    if let Some(s) = row.support() {
                        return Modulus::new(move |_| s);
                    }
                    let t = row
                        .pointwise()
                        .expect("every row needs a pointwise certificate")
                        .tail
                        .clone();
                    Modulus::new(move |q| t(x, q))
                });
                let outer = outer.clone();
                rearranged_modulus_nonneg(rows, Modulus::new(move |q| outer(x, q))).at(p)
            }),
        }
    });
    Representation::from_stream(space, term, tail, None, pointwise)
}

/// `Σ` of `parts` as one representation: the terms of each finitely
/// supported summand in turn, then those of the last one.
pub fn rep_concat(parts: &[Representation]) -> Result<Representation, CompletionError> {
    let (last, init) = parts.split_last().ok_or(CompletionError::InfiniteSupport)?;
    let space = last.space().clone();
    let mut blocks: Vec<(u64, Representation)> = Vec::new();
    let mut offset = 0u64;
    for r in init {
        let s = r.support().ok_or(CompletionError::InfiniteSupport)?;
        blocks.push((offset, r.clone()));
        offset += s;
    }
    let lookup = blocks.clone();
    let l = last.clone();
    let term: TermMap = Arc::new(move |n| {
        if n > offset {
            return l.term(n - offset);
        }
        let (start, r) = lookup
            .iter()
            .rev()
            .find(|(start, _)| *start < n)
            .expect("n is within the finite blocks");
        r.term(n - start)
    });
    let t = last.tail_modulus().clone();
    let support = last.support().map(|s| s + offset);
    let pointwise = parts
        .iter()
        .map(|r| r.pointwise().map(|pw| pw.domain.clone()))
        .collect::<Option<Vec<Subset>>>()
        .and_then(|domains| {
            let pt = last.pointwise()?.tail.clone();
            let domain = domains
                .into_iter()
                .fold(space.ground().full(), |a, b| a.intersection(&b));
            Some(PointwiseTail {
                domain,
                tail: Arc::new(move |x, p| pt(x, p) + offset),
            })
        });
    Ok(Representation::from_stream(
        &space,
        term,
        Modulus::new(move |p| t.at(p) + offset),
        support,
        pointwise,
    ))
}

/// The limit of a Cauchy sequence in `I₁`: `‖Γ(n) − Γ(m)‖₁ <= 2^-p` for
/// `n, m >= M(p)`.
///
/// With `Δ(1) = Γ(M(1))` and `Δ(n) = Γ(M(n)) − Γ(M(n−1))`, the limit is the
/// Lebesgue sum of `Δ`, and `‖limit − Γ(m)‖₁ <= 2^-p` for
/// `m >= M''(p) = max(M'(p+1), M(p+1))`.
pub fn limit_of_cauchy(
    space: &PreMeasureSpace,
    gamma: RepStream,
    modulus: Modulus,
) -> (Representation, Modulus) {
    let g = gamma.clone();
    let m = modulus.clone();
    let delta: RepStream = Arc::new(move |n| {
        let cur = g(m.at(n as u32));
        if n == 1 {
            cur
        } else {
            rep_sub(&cur, &g(m.at(n as u32 - 1)))
        }
    });
    // ‖Δ(n)‖₁ <= 2^-(n-1) for n >= 2, so Σ_{n>N} ‖Δ(n)‖₁ <= 2^-(N-1)
    let outer = Modulus::offset(1);
    let m_prime = lebesgue_modulus(&outer);
    let limit = lebesgue_sum(space, delta, outer, None);
    let m2 = Modulus::new(move |p| m_prime.at(p + 1).max(modulus.at(p + 1)));
    (limit, m2)
}
