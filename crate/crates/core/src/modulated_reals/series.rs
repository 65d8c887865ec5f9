//! Series, sequences of reals and double series.

use std::sync::Arc;

use num_traits::Zero;

use super::pairing::{diagonal_index, index_pair, pair_index};
use super::real::{Comparison, ModulatedReal, Modulus};
use crate::rational::{log2_ceil_u64, pow2_neg, Rational};

/// `n ↦ x_n`, 1-based.
pub type TermFn = Arc<dyn Fn(u64) -> ModulatedReal + Send + Sync>;
/// `(n, k) ↦ x_{nk}`, 1-based.
pub type EntryFn = Arc<dyn Fn(u64, u64) -> ModulatedReal + Send + Sync>;
/// `n ↦ M_n`.
pub type RowModuli = Arc<dyn Fn(u64) -> Modulus + Send + Sync>;

pub fn term_fn(f: impl Fn(u64) -> ModulatedReal + Send + Sync + 'static) -> TermFn {
    Arc::new(f)
}

/// `x_1 + ... + x_n`, summed exactly when every term is rational.
pub fn partial_sum(terms: &TermFn, n: u64) -> ModulatedReal {
    let mut exact = Rational::zero();
    let mut rest = ModulatedReal::zero();
    let mut all_exact = true;
    for k in 1..=n {
        let t = terms(k);
        match t.as_exact() {
            Some(q) => exact += q,
            None => {
                all_exact = false;
                rest = rest.add(&t);
            }
        }
    }
    let exact = ModulatedReal::from_rational(exact);
    if all_exact {
        exact
    } else {
        exact.add(&rest)
    }
}

/// Limit of `Σ x_n` given a convergence modulus for its partial sums:
/// `|Σ_{n<=N} x_n - ℓ| <= 2^-p` for `N >= conv(p)`.
///
/// The `j`-th approximation sums the first `conv(j+1)` terms, each to
/// precision `j + 1 + ⌈log2 N⌉`, so it lies within `2^-j` of `ℓ`.
pub fn series_limit(terms: TermFn, conv: Modulus) -> ModulatedReal {
    ModulatedReal::from_parts(
        move |j| {
            let j = j.min(u32::MAX as u64 / 2) as u32;
            let n = conv.at(j + 1);
            let prec = j + 1 + log2_ceil_u64(n);
            let mut acc = Rational::zero();
            for k in 1..=n {
                let t = terms(k);
                match t.as_exact() {
                    Some(q) => acc += q,
                    None => acc += t.approx_to(prec),
                }
            }
            acc
        },
        Modulus::offset(1),
    )
}

/// `Σ x_n` for an absolutely convergent series. `abs_tail` is the caller's
/// certificate: `Σ_{n>N} |x_n| <= 2^-p` for `N >= abs_tail(p)`.
pub fn sum_series(terms: TermFn, abs_tail: Modulus) -> ModulatedReal {
    series_limit(terms, abs_tail)
}

/// The limit of a sequence with `|x_n - x_m| <= 2^-p` for `n, m >= M(p)`.
pub fn limit(seq: TermFn, cauchy: Modulus) -> ModulatedReal {
    ModulatedReal::from_parts(
        move |j| {
            let j = j.min(u32::MAX as u64 / 2) as u32;
            seq(cauchy.at(j + 1)).approx_to(j + 1)
        },
        Modulus::offset(1),
    )
}

/// A sequence of reals with a Cauchy modulus.
#[derive(Clone)]
pub struct ModulatedRealSeq {
    pub term: TermFn,
    pub cauchy_modulus: Modulus,
}

/// Indices where a sequence modulus failed a sampled check.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyViolation {
    pub precision: u32,
    pub n: u64,
    pub m: u64,
}

impl ModulatedRealSeq {
    pub fn new(term: TermFn, cauchy_modulus: Modulus) -> Self {
        ModulatedRealSeq {
            term,
            cauchy_modulus,
        }
    }

    pub fn limit(&self) -> ModulatedReal {
        limit(self.term.clone(), self.cauchy_modulus.clone())
    }

    /// Samples `n, m ∈ {M(p), M(p)+1, M(p)+17}` for `p <= max_p` and refutes
    /// `|x_n - x_m| <= 2^-p` only when the difference provably exceeds it.
    pub fn check_cauchy(&self, max_p: u32) -> Result<(), CauchyViolation> {
        for p in 0..=max_p {
            let base = self.cauchy_modulus.at(p);
            let idx = [base, base + 1, base + 17];
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let d = (self.term)(idx[i]).sub(&(self.term)(idx[j])).abs();
                    let bound = ModulatedReal::from_rational(pow2_neg(p));
                    if d.compare_at(&bound, p + 8) == Comparison::Greater {
                        return Err(CauchyViolation {
                            precision: p,
                            n: idx[i],
                            m: idx[j],
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Convergence data for the absolute values `|x_{nk}|` of a signed double
/// series.
#[derive(Clone)]
pub struct AbsModuli {
    pub row_modulus: RowModuli,
    pub outer_modulus: Modulus,
}

/// A double series `Σ_n Σ_k x_{nk}`.
///
/// `row_modulus(n)` is a convergence modulus of the row partial sums to their
/// limit `ℓ_n`, and `outer_modulus` one of `Σ_{n<=N} ℓ_n`. When `abs` is
/// `None` the entries are nonnegative and these moduli double as the moduli
/// of the absolute series.
#[derive(Clone)]
pub struct DoubleSeq {
    pub entry: EntryFn,
    pub row_modulus: RowModuli,
    pub outer_modulus: Modulus,
    pub abs: Option<AbsModuli>,
}

/// A double series rearranged along the Cantor enumeration.
#[derive(Clone)]
pub struct Rearranged {
    /// `m ↦ x_{φ(m)}`.
    pub flat: TermFn,
    /// Convergence modulus of the flattened partial sums towards the double
    /// sum.
    pub modulus: Modulus,
    /// Convergence modulus of `Σ_m |x_{φ(m)}|`.
    pub abs_modulus: Modulus,
}

impl Rearranged {
    pub fn sum(&self) -> ModulatedReal {
        sum_series(self.flat.clone(), self.abs_modulus.clone())
    }
}

/// Modulus for the flattening of a nonnegative double series:
/// `p ↦ M_φ(max(M(p+1), max_{n<=M(p+1)} M_n(M(p+1) + p + 1)))`, with
/// `M_φ(N) = φ⁻¹(N, N)`.
pub fn rearranged_modulus_nonneg(row_modulus: RowModuli, outer: Modulus) -> Modulus {
    Modulus::new(move |p| {
        let big_m = outer.at(p + 1);
        let shift = u32::try_from(big_m).expect("modulus too large") + p + 1;
        let rows = (1..=big_m)
            .map(|n| row_modulus(n).at(shift))
            .max()
            .unwrap_or(0);
        diagonal_index(big_m.max(rows))
    })
}

fn signed_rearranged_modulus(row_modulus: RowModuli, outer: Modulus) -> Modulus {
    Modulus::new(move |p| {
        let big_m = outer.at(p + 2);
        let shift = u32::try_from(big_m).expect("modulus too large") + p + 2;
        let rows = (1..=big_m)
            .map(|n| row_modulus(n).at(shift))
            .max()
            .unwrap_or(0);
        diagonal_index(big_m.max(rows))
    })
}

/// Flattens an absolutely convergent double series along the Cantor
/// enumeration and builds a modulus for the rearranged series.
///
/// For signed entries the absolute-value modulus `M̃'` is built first with
/// the nonnegative construction, the outer modulus is replaced by
/// `M ∨ M̃'`, and the returned modulus is
/// `p ↦ M_φ(max(M(p+2), max_{n<=M(p+2)} M_n(M(p+2) + p + 2)))`.
pub fn rearrange_double(d: &DoubleSeq) -> Rearranged {
    let entry = d.entry.clone();
    let flat: TermFn = Arc::new(move |m| {
        let (n, k) = index_pair(m);
        entry(n, k)
    });
    match &d.abs {
        None => {
            let m = rearranged_modulus_nonneg(d.row_modulus.clone(), d.outer_modulus.clone());
            Rearranged {
                flat,
                modulus: m.clone(),
                abs_modulus: m,
            }
        }
        Some(abs) => {
            let abs_modulus =
                rearranged_modulus_nonneg(abs.row_modulus.clone(), abs.outer_modulus.clone());
            let outer = d.outer_modulus.max(&abs_modulus);
            let modulus = signed_rearranged_modulus(d.row_modulus.clone(), outer);
            Rearranged {
                flat,
                modulus,
                abs_modulus,
            }
        }
    }
}

/// A flat absolutely convergent series redistributed over rows by the Cantor
/// enumeration: row `n` is `k ↦ y_{φ⁻¹(n,k)}`.
#[derive(Clone)]
pub struct Unflattened {
    flat: TermFn,
    abs_tail: Modulus,
}

impl Unflattened {
    /// `x_{nk} = y_{φ⁻¹(n,k)}`.
    pub fn entry(&self, n: u64, k: u64) -> ModulatedReal {
        (self.flat)(pair_index(n, k))
    }

    /// Absolute tail modulus of every row. Since `φ⁻¹(n, k) >= k`, the tail
    /// of row `n` past `N` is dominated by the tail of `Σ |y_m|` past `N`.
    pub fn row_modulus(&self) -> Modulus {
        self.abs_tail.clone()
    }

    /// Absolute tail modulus of `Σ_n ℓ_n`, using `φ⁻¹(n, k) >= n`.
    pub fn outer_modulus(&self) -> Modulus {
        self.abs_tail.clone()
    }

    /// `ℓ_n = Σ_k x_{nk}`.
    pub fn row_sum(&self, n: u64) -> ModulatedReal {
        let flat = self.flat.clone();
        sum_series(
            Arc::new(move |k| flat(pair_index(n, k))),
            self.row_modulus(),
        )
    }

    /// `Σ_n ℓ_n`.
    pub fn double_sum(&self) -> ModulatedReal {
        let this = self.clone();
        sum_series(Arc::new(move |n| this.row_sum(n)), self.outer_modulus())
    }

    /// `Σ_m y_m`.
    pub fn flat_sum(&self) -> ModulatedReal {
        sum_series(self.flat.clone(), self.abs_tail.clone())
    }

    /// Whether the iterated and flat sums agree to within `2^-p`.
    pub fn sums_agree_at(&self, p: u32) -> bool {
        self.double_sum().compare_at(&self.flat_sum(), p) == Comparison::Within
    }

    /// The pieces as a [`DoubleSeq`] whose rows and outer sum carry the
    /// absolute tail moduli.
    pub fn as_double_seq(&self) -> DoubleSeq {
        let flat = self.flat.clone();
        let tail = self.abs_tail.clone();
        DoubleSeq {
            entry: Arc::new(move |n, k| flat(pair_index(n, k))),
            row_modulus: Arc::new(move |_| tail.clone()),
            outer_modulus: self.abs_tail.clone(),
            abs: None,
        }
    }
}

/// Converse direction: splits `Σ y_m` (with absolute tail modulus `abs_tail`)
/// into rows along the Cantor enumeration.
pub fn unflatten_check(flat: TermFn, abs_tail: Modulus) -> Unflattened {
    Unflattened { flat, abs_tail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num_traits::Signed;

    fn exact(q: Rational) -> ModulatedReal {
        ModulatedReal::from_rational(q)
    }

    #[test]
    fn geometric_series() {
        let s = sum_series(term_fn(|n| exact(pow2_neg(n as u32))), Modulus::offset(0));
        assert_eq!(s.compare_at(&exact(int(1)), 40), Comparison::Within);
        assert!((s.approx_to(10) - int(1)) <= pow2_neg(9));
        s.check_modulus(24).unwrap();
    }

    #[test]
    fn alternating_series() {
        let s = sum_series(
            term_fn(|n| {
                let t = pow2_neg(n as u32);
                exact(if n % 2 == 0 { t } else { -t })
            }),
            Modulus::offset(0),
        );
        assert_eq!(s.compare_at(&exact(ratio(-1, 3)), 30), Comparison::Within);
    }

    #[test]
    fn zero_series() {
        let s = sum_series(term_fn(|_| ModulatedReal::zero()), Modulus::offset(0));
        assert!(s.approx_to(12).is_zero());
    }

    #[test]
    fn sequence_limit() {
        // x_n = 1 - 2^-n
        let seq = ModulatedRealSeq::new(
            term_fn(|n| exact(int(1) - pow2_neg(n as u32))),
            Modulus::offset(1),
        );
        seq.check_cauchy(20).unwrap();
        assert_eq!(
            seq.limit().compare_at(&exact(int(1)), 30),
            Comparison::Within
        );
        let bad = ModulatedRealSeq::new(term_fn(|n| exact(int(n as i64))), Modulus::offset(1));
        assert!(bad.check_cauchy(3).is_err());
    }

    #[test]
    fn nonneg_rearrangement_sums_to_one() {
        let d = DoubleSeq {
            entry: Arc::new(|n, k| exact(pow2_neg((n + k) as u32))),
            row_modulus: Arc::new(|_| Modulus::offset(0)),
            outer_modulus: Modulus::offset(0),
            abs: None,
        };
        let r = rearrange_double(&d);
        assert_eq!(r.modulus.find_non_increase(30), None);
        for p in 0..=8 {
            let s = partial_sum(&r.flat, r.modulus.at(p));
            let gap = (s.as_exact().unwrap() - int(1)).abs();
            assert!(gap <= pow2_neg(p), "p = {p}");
        }
        assert_eq!(r.sum().compare_at(&exact(int(1)), 20), Comparison::Within);
    }

    #[test]
    fn unflatten_rows() {
        let u = unflatten_check(term_fn(|m| exact(pow2_neg(m as u32))), Modulus::offset(0));
        // row 1 holds y_1, y_3, y_6, ...
        let direct: Rational = (1..=40u64).map(|k| pow2_neg(pair_index(1, k) as u32)).sum();
        assert_eq!(
            u.row_sum(1).compare_at(&exact(direct), 12),
            Comparison::Within
        );
        assert!(u.sums_agree_at(12));
    }
}
