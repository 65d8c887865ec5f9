use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::rational::{log2_ceil_abs, pow2_neg, Rational};

/// A strictly increasing map from precisions to sequence indices.
#[derive(Clone)]
pub struct Modulus(Arc<dyn Fn(u32) -> u64 + Send + Sync>);

impl Modulus {
    pub fn new(f: impl Fn(u32) -> u64 + Send + Sync + 'static) -> Self {
        Modulus(Arc::new(f))
    }

    /// `p ↦ p + k`.
    pub fn offset(k: u64) -> Self {
        Modulus::new(move |p| p as u64 + k)
    }

    /// `p ↦ a·p + b`; strictly increasing for `a >= 1`.
    pub fn linear(a: u64, b: u64) -> Self {
        assert!(a >= 1, "linear modulus needs a positive slope");
        Modulus::new(move |p| a * p as u64 + b)
    }

    pub fn at(&self, p: u32) -> u64 {
        (self.0)(p)
    }

    /// `p ↦ max(self(p), other(p))`.
    pub fn max(&self, other: &Modulus) -> Modulus {
        let (a, b) = (self.clone(), other.clone());
        Modulus::new(move |p| a.at(p).max(b.at(p)))
    }

    /// `p ↦ self(p + k)`.
    pub fn shift(&self, k: u32) -> Modulus {
        let a = self.clone();
        Modulus::new(move |p| a.at(p + k))
    }

    /// First `p < max_p` with `self(p) >= self(p + 1)`.
    pub fn find_non_increase(&self, max_p: u32) -> Option<u32> {
        (0..max_p).find(|&p| self.at(p) >= self.at(p + 1))
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Modulus[{}, {}, {}, ..]",
            self.at(0),
            self.at(1),
            self.at(2)
        )
    }
}

type ApproxFn = Arc<dyn Fn(u64) -> Rational + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Exact(Rational),
    Cauchy { approx: ApproxFn, modulus: Modulus },
}

/// A real number given as a rational Cauchy sequence `(a_n)` together with a
/// convergence modulus `M`: `|a_n - a_m| <= 2^-p` whenever `n, m >= M(p)`.
///
/// Rational values are stored directly so that arithmetic on them stays
/// exact and cheap.
#[derive(Clone)]
pub struct ModulatedReal(Repr);

/// Outcome of [`ModulatedReal::compare_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    /// `|x - y| <= 2^-p`.
    Within,
}

/// A sampled pair of indices breaking the Cauchy condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusViolation {
    pub precision: u32,
    pub n: u64,
    pub m: u64,
    pub gap: Rational,
}

impl fmt::Display for ModulusViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|a_{} - a_{}| = {} exceeds 2^-{}",
            self.n, self.m, self.gap, self.precision
        )
    }
}

impl ModulatedReal {
    pub fn from_rational(q: Rational) -> Self {
        ModulatedReal(Repr::Exact(q))
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    /// Builds a real from a sequence and its modulus. The Cauchy condition is
    /// the caller's obligation; [`check_modulus`](Self::check_modulus)
    /// falsifies it on samples.
    pub fn from_parts(
        approx: impl Fn(u64) -> Rational + Send + Sync + 'static,
        modulus: Modulus,
    ) -> Self {
        ModulatedReal(Repr::Cauchy {
            approx: Arc::new(approx),
            modulus,
        })
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Exact(q) => Some(q),
            Repr::Cauchy { .. } => None,
        }
    }

    /// The term `a_n`.
    pub fn term(&self, n: u64) -> Rational {
        match &self.0 {
            Repr::Exact(q) => q.clone(),
            Repr::Cauchy { approx, .. } => approx(n),
        }
    }

    /// `M(p)`. Rationals use `p ↦ p + 1` so that indices stay positive.
    pub fn modulus(&self, p: u32) -> u64 {
        match &self.0 {
            Repr::Exact(_) => p as u64 + 1,
            Repr::Cauchy { modulus, .. } => modulus.at(p),
        }
    }

    pub fn modulus_fn(&self) -> Modulus {
        match &self.0 {
            Repr::Exact(_) => Modulus::offset(1),
            Repr::Cauchy { modulus, .. } => modulus.clone(),
        }
    }

    /// `a_{M(p)}`, within `2^-p` of the limit.
    pub fn approx_to(&self, p: u32) -> Rational {
        match &self.0 {
            Repr::Exact(q) => q.clone(),
            Repr::Cauchy { approx, modulus } => approx(modulus.at(p)),
        }
    }

    fn lift2(
        x: &Self,
        y: &Self,
        exact: impl Fn(&Rational, &Rational) -> Rational + Send + Sync + 'static,
        modulus: Modulus,
    ) -> Self {
        if let (Some(a), Some(b)) = (x.as_exact(), y.as_exact()) {
            return Self::from_rational(exact(a, b));
        }
        let (x, y) = (x.clone(), y.clone());
        Self::from_parts(move |n| exact(&x.term(n), &y.term(n)), modulus)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus_fn().shift(1).max(&other.modulus_fn().shift(1));
        Self::lift2(self, other, |a, b| a + b, m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Exact(q) => Self::from_rational(-q),
            Repr::Cauchy { approx, modulus } => {
                let approx = approx.clone();
                Self::from_parts(move |n| -approx(n), modulus.clone())
            }
        }
    }

    /// Every term past `M(0)` is bounded by `|a_{M(0)}| + 1 <= 2^k`.
    fn magnitude_bits(&self) -> u32 {
        let a = self.approx_to(0).abs() + Rational::from_integer(1.into());
        log2_ceil_abs(&a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_exact(), other.as_exact()) {
            return Self::from_rational(a * b);
        }
        let kx = self.magnitude_bits();
        let ky = other.magnitude_bits();
        let m = self
            .modulus_fn()
            .shift(1 + ky)
            .max(&other.modulus_fn().shift(1 + kx));
        Self::lift2(self, other, |a, b| a * b, m)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q.clone()))
    }

    pub fn abs(&self) -> Self {
        match &self.0 {
            Repr::Exact(q) => Self::from_rational(q.abs()),
            Repr::Cauchy { approx, modulus } => {
                let approx = approx.clone();
                Self::from_parts(move |n| approx(n).abs(), modulus.clone())
            }
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        let m = self.modulus_fn().max(&other.modulus_fn());
        Self::lift2(self, other, |a, b| a.min(b).clone(), m)
    }

    pub fn max(&self, other: &Self) -> Self {
        let m = self.modulus_fn().max(&other.modulus_fn());
        Self::lift2(self, other, |a, b| a.max(b).clone(), m)
    }

    /// Sound three-way comparison at precision `p`: `Less`/`Greater` are
    /// exact claims, `Within` means `|x - y| <= 2^-p`.
    pub fn compare_at(&self, other: &Self, p: u32) -> Comparison {
        let tol = pow2_neg(p + 1);
        let d = match (self.as_exact(), other.as_exact()) {
            (Some(a), Some(b)) => {
                let d = a - b;
                if d.abs() <= pow2_neg(p) {
                    return Comparison::Within;
                }
                return if d.is_negative() {
                    Comparison::Less
                } else {
                    Comparison::Greater
                };
            }
            _ => self.approx_to(p + 2) - other.approx_to(p + 2),
        };
        if d > tol {
            Comparison::Greater
        } else if d < -tol {
            Comparison::Less
        } else {
            Comparison::Within
        }
    }

    /// The bounded equality test `|a_{M(p+1)} - b_{N(p+1)}| <= 2^-p`; `x = y`
    /// holds exactly when this is true for every `p`.
    pub fn eq_at(&self, other: &Self, p: u32) -> bool {
        (self.approx_to(p + 1) - other.approx_to(p + 1)).abs() <= pow2_neg(p)
    }

    /// `x <= y + 2^-p` is certified (never refutes a true `x <= y`).
    pub fn le_at(&self, other: &Self, p: u32) -> bool {
        self.compare_at(other, p) != Comparison::Greater
    }

    /// Falsification test of the modulus: for every `p <= max_p` samples
    /// `n, m ∈ {M(p), M(p)+1, M(p)+17}` and checks `|a_n - a_m| <= 2^-p`,
    /// plus strict monotonicity of `M` on `0..=max_p`.
    pub fn check_modulus(&self, max_p: u32) -> Result<(), ModulusViolation> {
        let Repr::Cauchy { approx, modulus } = &self.0 else {
            return Ok(());
        };
        for p in 0..=max_p {
            let base = modulus.at(p);
            if p < max_p && modulus.at(p + 1) <= base {
                return Err(ModulusViolation {
                    precision: p,
                    n: base,
                    m: modulus.at(p + 1),
                    gap: Rational::zero(),
                });
            }
            let idx = [base, base + 1, base + 17];
            let vals: Vec<Rational> = idx.iter().map(|&n| approx(n)).collect();
            let bound = pow2_neg(p);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let gap = (&vals[i] - &vals[j]).abs();
                    if gap > bound {
                        return Err(ModulusViolation {
                            precision: p,
                            n: idx[i],
                            m: idx[j],
                            gap,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl From<Rational> for ModulatedReal {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Debug for ModulatedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Exact(q) => write!(f, "ModulatedReal({q})"),
            Repr::Cauchy { modulus, .. } => write!(f, "ModulatedReal(<sequence>, {modulus:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn r(n: i64, d: i64) -> ModulatedReal {
        ModulatedReal::from_rational(ratio(n, d))
    }

    /// `a_n = q + (-1)^n 2^-n`, modulus `p ↦ p + 1`.
    fn wobbly(q: Rational) -> ModulatedReal {
        ModulatedReal::from_parts(
            move |n| {
                let e = pow2_neg(n.min(4000) as u32);
                if n % 2 == 0 {
                    &q + e
                } else {
                    &q - e
                }
            },
            Modulus::offset(1),
        )
    }

    #[test]
    fn rational_embedding() {
        assert_eq!(r(3, 2).approx_to(10), ratio(3, 2));
        assert!(ModulatedReal::zero().term(7).is_zero());
        assert_eq!(r(1, 3).compare_at(&r(1, 3), 50), Comparison::Within);
    }

    #[test]
    fn rational_operations_are_exact() {
        assert_eq!(r(1, 2).add(&r(1, 3)).approx_to(20), ratio(5, 6));
        assert_eq!(r(-2, 7).abs().approx_to(3), ratio(2, 7));
        assert_eq!(r(2, 3).mul(&r(-3, 4)).approx_to(0), ratio(-1, 2));
        assert_eq!(r(2, 3).min(&r(1, 2)).approx_to(0), ratio(1, 2));
        assert_eq!(r(2, 3).max(&r(1, 2)).approx_to(0), ratio(2, 3));
        assert_eq!(r(2, 3).sub(&r(1, 2)).approx_to(0), ratio(1, 6));
    }

    #[test]
    fn sequence_operations_converge() {
        let x = wobbly(ratio(1, 3));
        let y = wobbly(int(-5));
        x.check_modulus(24).unwrap();
        for z in [
            x.add(&y),
            x.mul(&y),
            x.neg(),
            x.abs(),
            y.abs(),
            x.min(&y),
            x.max(&y),
            x.scale(&ratio(7, 3)),
        ] {
            z.check_modulus(24).unwrap();
        }
        let prod = x.mul(&y);
        assert_eq!(prod.compare_at(&r(-5, 3), 30), Comparison::Within);
        assert_eq!(x.max(&x).compare_at(&x, 30), Comparison::Within);
        assert_eq!(x.add(&y).compare_at(&r(-14, 3), 30), Comparison::Within);
    }

    #[test]
    fn comparison() {
        assert_eq!(r(0, 1).compare_at(&r(1, 1), 10), Comparison::Less);
        assert_eq!(r(1, 1).compare_at(&r(0, 1), 10), Comparison::Greater);
        let x = wobbly(int(0));
        assert_eq!(x.compare_at(&r(1, 1), 10), Comparison::Less);
        assert_eq!(x.compare_at(&ModulatedReal::zero(), 40), Comparison::Within);
        assert!(x.eq_at(&ModulatedReal::zero(), 30));
        assert!(r(1, 1).eq_at(&r(0, 1), 0));
        assert!(!r(1, 1).eq_at(&r(0, 1), 1));
    }

    #[test]
    fn broken_modulus_is_reported() {
        let bad = ModulatedReal::from_parts(
            |n| if n % 2 == 0 { int(0) } else { int(1) },
            Modulus::offset(1),
        );
        let v = bad.check_modulus(4).unwrap_err();
        assert_eq!(v.precision, 1);
        let flat = ModulatedReal::from_parts(|_| int(0), Modulus::new(|_| 3));
        assert!(flat.check_modulus(4).is_err());
    }
}
