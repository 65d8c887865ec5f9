//! Complemented subsets of a finite ground set.
//!
//! A complemented subset is a pair `(A¹, A⁰)` of disjoint subsets: the points
//! known to be in, and the points known to be out. Its characteristic
//! function is only defined on `A¹ ∪ A⁰`. Subsets are bit masks over the
//! ground set, so ground sets hold at most 64 elements.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use serde_json::Value;

use crate::rational::Rational;
use crate::report::{CheckConfig, CheckError, Report};

pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("duplicate ground-set label {0:?}")]
    DuplicateLabel(String),
    #[error("ground set has {0} elements; at most {MAX_GROUND} are supported")]
    TooLarge(usize),
    #[error("unknown element {0:?}")]
    UnknownLabel(String),
    #[error("operands live on different ground sets")]
    GroundMismatch,
    #[error("positive part {pos} and negative part {neg} are not disjoint")]
    NotDisjoint { pos: String, neg: String },
    #[error("bitstring {0:?} does not match a ground set of {1} elements")]
    BadBitstring(String, usize),
}

/// A finite list of distinct labels; the order fixes the enumeration used by
/// every brute-force loop.
#[derive(Clone)]
pub struct GroundSet(Arc<[String]>);

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, SetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(SetError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SetError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet(labels.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn position(&self, label: &str) -> Result<usize, SetError> {
        self.0
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SetError::UnknownLabel(label.to_string()))
    }

    /// Bit mask with one bit per element.
    pub fn mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn full(&self) -> Subset {
        Subset::from_bits(self, self.mask())
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::from_bits(self, 0)
    }

    /// Every subset, in bit-mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        assert!(self.len() < 64);
        (0..(1u64 << self.len())).map(move |b| Subset::from_bits(self, b))
    }

    /// Every indicator function `X → 2`, in bit-mask order.
    pub fn indicators(&self) -> impl Iterator<Item = IndicatorFn> + '_ {
        assert!(self.len() < 64);
        (0..(1u64 << self.len())).map(move |b| IndicatorFn::from_bits(self, b))
    }

    /// Every complemented subset (`3^|X|` of them): each element is in the
    /// positive part, the negative part, or neither.
    pub fn complemented_subsets(&self) -> Vec<ComplementedSubset> {
        let n = self.len();
        let total = 3usize.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let (mut pos, mut neg) = (0u64, 0u64);
                for i in 0..n {
                    match code % 3 {
                        1 => pos |= 1 << i,
                        2 => neg |= 1 << i,
                        _ => {}
                    }
                    code /= 3;
                }
                ComplementedSubset::from_bits_unchecked(self, pos, neg)
            })
            .collect()
    }

    /// Separation inequality: some `f: X → 2` tells `x` and `y` apart.
    pub fn apart(&self, x: usize, y: usize) -> bool {
        self.indicators().any(|f| f.value(x) != f.value(y))
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for GroundSet {}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

fn same_ground(a: &GroundSet, b: &GroundSet) -> Result<(), SetError> {
    if a == b {
        Ok(())
    } else {
        Err(SetError::GroundMismatch)
    }
}

/// A subset of a ground set, as membership flags.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    ground: GroundSet,
    bits: u64,
}

impl Subset {
    pub fn from_bits(ground: &GroundSet, bits: u64) -> Self {
        Subset {
            ground: ground.clone(),
            bits: bits & ground.mask(),
        }
    }

    pub fn from_labels<'a>(
        ground: &GroundSet,
        labels: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, SetError> {
        let mut bits = 0;
        for l in labels {
            bits |= 1 << ground.position(l)?;
        }
        Ok(Subset::from_bits(ground, bits))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Element positions in ground-set order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ground.len()).filter(move |&i| self.contains(i))
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::from_bits(&self.ground, self.bits | other.bits)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset::from_bits(&self.ground, self.bits & other.bits)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset::from_bits(&self.ground, self.bits & !other.bits)
    }

    pub fn complement(&self) -> Subset {
        Subset::from_bits(&self.ground, !self.bits)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }
}

impl Hash for Subset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.elements().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ground.label(i))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A pair `(A¹, A⁰)` of disjoint subsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplementedSubset {
    pos: Subset,
    neg: Subset,
}

impl ComplementedSubset {
    pub fn new(pos: Subset, neg: Subset) -> Result<Self, SetError> {
        same_ground(&pos.ground, &neg.ground)?;
        if pos.bits & neg.bits != 0 {
            return Err(SetError::NotDisjoint {
                pos: pos.to_string(),
                neg: neg.to_string(),
            });
        }
        Ok(ComplementedSubset { pos, neg })
    }

    /// Callers guarantee `pos & neg == 0`.
    pub(crate) fn from_bits_unchecked(ground: &GroundSet, pos: u64, neg: u64) -> Self {
        debug_assert_eq!(pos & neg, 0);
        ComplementedSubset {
            pos: Subset::from_bits(ground, pos),
            neg: Subset::from_bits(ground, neg),
        }
    }

    pub fn from_bits(ground: &GroundSet, pos: u64, neg: u64) -> Result<Self, SetError> {
        Self::new(
            Subset::from_bits(ground, pos),
            Subset::from_bits(ground, neg),
        )
    }

    pub fn ground(&self) -> &GroundSet {
        &self.pos.ground
    }

    /// `A¹`.
    pub fn pos(&self) -> &Subset {
        &self.pos
    }

    /// `A⁰`.
    pub fn neg(&self) -> &Subset {
        &self.neg
    }

    /// `A¹ ∪ A⁰`, the domain of the characteristic function.
    pub fn domain(&self) -> Subset {
        self.pos.union(&self.neg)
    }

    fn check(&self, other: &Self) -> Result<(), SetError> {
        same_ground(self.ground(), other.ground())
    }

    fn raw(&self) -> (u64, u64) {
        (self.pos.bits, self.neg.bits)
    }

    fn build(&self, pos: u64, neg: u64) -> Self {
        Self::from_bits_unchecked(self.ground(), pos, neg)
    }

    /// `A ∧ B = (A¹∩B¹, (A¹∩B⁰) ∪ (A⁰∩B¹) ∪ (A⁰∩B⁰))`.
    pub fn meet(&self, other: &Self) -> Result<Self, SetError> {
        self.check(other)?;
        let ((a1, a0), (b1, b0)) = (self.raw(), other.raw());
        Ok(self.build(a1 & b1, (a1 & b0) | (a0 & b1) | (a0 & b0)))
    }

    /// `A ∨ B = ((A¹∩B⁰) ∪ (A⁰∩B¹) ∪ (A¹∩B¹), A⁰∩B⁰)`.
    pub fn join(&self, other: &Self) -> Result<Self, SetError> {
        self.check(other)?;
        let ((a1, a0), (b1, b0)) = (self.raw(), other.raw());
        Ok(self.build((a1 & b0) | (a0 & b1) | (a1 & b1), a0 & b0))
    }

    /// `−A = (A⁰, A¹)`.
    pub fn complement(&self) -> Self {
        self.build(self.neg.bits, self.pos.bits)
    }

    /// `A − B = A ∧ (−B)`.
    pub fn minus(&self, other: &Self) -> Result<Self, SetError> {
        self.meet(&other.complement())
    }

    /// `A < B`: `A¹ ⊆ B¹` and `B⁰ ⊆ A⁰`.
    pub fn leq(&self, other: &Self) -> Result<bool, SetError> {
        self.check(other)?;
        Ok(self.pos.is_subset_of(&other.pos) && other.neg.is_subset_of(&self.neg))
    }

    /// `χ_A`: 1 on `A¹`, 0 on `A⁰`, undefined elsewhere.
    pub fn characteristic(&self) -> PartialRationalFn {
        let values = (0..self.ground().len())
            .map(|i| {
                if self.pos.contains(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        PartialRationalFn::new(self.domain(), values)
    }

    /// `f(x) = 1` for `x ∈ A¹`, `0` otherwise. Only meaningful on `A¹ ∪ A⁰`.
    pub fn chi_at(&self, x: usize) -> u8 {
        self.pos.contains(x) as u8
    }
}

impl fmt::Display for ComplementedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.neg)
    }
}

impl fmt::Debug for ComplementedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `meet` as a free function.
pub fn meet(
    a: &ComplementedSubset,
    b: &ComplementedSubset,
) -> Result<ComplementedSubset, SetError> {
    a.meet(b)
}

pub fn join(
    a: &ComplementedSubset,
    b: &ComplementedSubset,
) -> Result<ComplementedSubset, SetError> {
    a.join(b)
}

pub fn complement(a: &ComplementedSubset) -> ComplementedSubset {
    a.complement()
}

pub fn minus(
    a: &ComplementedSubset,
    b: &ComplementedSubset,
) -> Result<ComplementedSubset, SetError> {
    a.minus(b)
}

pub fn cs_leq(a: &ComplementedSubset, b: &ComplementedSubset) -> Result<bool, SetError> {
    a.leq(b)
}

pub fn characteristic(a: &ComplementedSubset) -> PartialRationalFn {
    a.characteristic()
}

/// A total function `X → {0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndicatorFn {
    ones: Subset,
}

impl IndicatorFn {
    pub fn from_bits(ground: &GroundSet, bits: u64) -> Self {
        IndicatorFn {
            ones: Subset::from_bits(ground, bits),
        }
    }

    /// `"101"` over `{a, b, c}` is 1 at `a` and `c`: character `i` is the
    /// value at ground element `i`.
    pub fn from_bitstring(ground: &GroundSet, s: &str) -> Result<Self, SetError> {
        let bad = || SetError::BadBitstring(s.to_string(), ground.len());
        if s.chars().count() != ground.len() {
            return Err(bad());
        }
        let mut bits = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return Err(bad()),
            }
        }
        Ok(Self::from_bits(ground, bits))
    }

    pub fn constant(ground: &GroundSet, value: bool) -> Self {
        Self::from_bits(ground, if value { ground.mask() } else { 0 })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ones.ground
    }

    pub fn bits(&self) -> u64 {
        self.ones.bits
    }

    pub fn value(&self, x: usize) -> u8 {
        self.ones.contains(x) as u8
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.ground().len())
            .map(|i| if self.ones.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// `δ₀(f) = ({x : f(x) = 1}, {x : f(x) = 0})`.
    pub fn detachable(&self) -> ComplementedSubset {
        ComplementedSubset::from_bits_unchecked(
            self.ground(),
            self.ones.bits,
            !self.ones.bits & self.ground().mask(),
        )
    }
}

impl fmt::Debug for IndicatorFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndicatorFn({})", self.to_bitstring())
    }
}

pub fn detachable(f: &IndicatorFn) -> ComplementedSubset {
    f.detachable()
}

/// A rational-valued function defined on a subset of the ground set.
#[derive(Clone)]
pub struct PartialRationalFn {
    domain: Subset,
    values: Vec<Rational>,
}

impl PartialRationalFn {
    /// `values[i]` is read only for `i` in `domain`.
    pub fn new(domain: Subset, mut values: Vec<Rational>) -> Self {
        values.resize(domain.ground.len(), Rational::zero());
        for (i, v) in values.iter_mut().enumerate() {
            if !domain.contains(i) {
                *v = Rational::zero();
            }
        }
        PartialRationalFn { domain, values }
    }

    pub fn constant(domain: Subset, c: Rational) -> Self {
        let values = vec![c; domain.ground.len()];
        Self::new(domain, values)
    }

    pub fn domain(&self) -> &Subset {
        &self.domain
    }

    pub fn get(&self, x: usize) -> Option<&Rational> {
        self.domain.contains(x).then(|| &self.values[x])
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let domain = self.domain.intersection(&other.domain);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Self::new(domain, values)
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self::new(self.domain.clone(), self.values.iter().map(f).collect())
    }

    /// Pointwise minimum on the common domain.
    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.min(b).clone())
    }

    /// Pointwise maximum on the common domain.
    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.max(b).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a * c)
    }

    pub fn one_minus(&self) -> Self {
        self.map(|a| Rational::one() - a)
    }

    /// Restriction to `domain ∩ d`.
    pub fn restrict(&self, d: &Subset) -> Self {
        Self::new(self.domain.intersection(d), self.values.clone())
    }
}

impl PartialEq for PartialRationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self
                .domain
                .elements()
                .all(|i| self.values[i] == other.values[i])
    }
}

impl fmt::Debug for PartialRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for i in self.domain.elements() {
            m.entry(&self.domain.ground.label(i), &self.values[i].to_string());
        }
        m.finish()
    }
}

/// Exhaustive check of the algebra of complemented subsets on `ground`: the
/// lattice laws, the characteristic-function identities, the detachable
/// bijection and the apartness axioms.
pub fn check_algebra(ground: &GroundSet, config: &CheckConfig) -> Result<Report, CheckError> {
    if ground.len() > config.max_ground {
        return Err(CheckError::GroundTooLarge {
            size: ground.len(),
            max: config.max_ground,
        });
    }
    let all = ground.complemented_subsets();
    let mut report = Report::new("algebra");
    let show = |xs: &[&ComplementedSubset]| -> Value {
        Value::Array(xs.iter().map(|a| Value::String(a.to_string())).collect())
    };
    let detail = format!("all {} complemented subsets", all.len());

    let pairs = |law: &dyn Fn(&ComplementedSubset, &ComplementedSubset) -> bool| {
        for a in &all {
            for b in &all {
                if !law(a, b) {
                    return Err(show(&[a, b]));
                }
            }
        }
        Ok(())
    };
    let triples =
        |law: &dyn Fn(&ComplementedSubset, &ComplementedSubset, &ComplementedSubset) -> bool| {
            for a in &all {
                for b in &all {
                    for c in &all {
                        if !law(a, b, c) {
                            return Err(show(&[a, b, c]));
                        }
                    }
                }
            }
            Ok(())
        };
    let m = |a: &ComplementedSubset, b: &ComplementedSubset| a.meet(b).expect("same ground");
    let j = |a: &ComplementedSubset, b: &ComplementedSubset| a.join(b).expect("same ground");

    report.record(
        "meet-commutative",
        false,
        &detail,
        pairs(&|a, b| m(a, b) == m(b, a)),
    );
    report.record(
        "join-commutative",
        false,
        &detail,
        pairs(&|a, b| j(a, b) == j(b, a)),
    );
    report.record(
        "meet-associative",
        false,
        &detail,
        triples(&|a, b, c| m(&m(a, b), c) == m(a, &m(b, c))),
    );
    report.record(
        "join-associative",
        false,
        &detail,
        triples(&|a, b, c| j(&j(a, b), c) == j(a, &j(b, c))),
    );
    let involution = all
        .iter()
        .find(|a| a.complement().complement() != **a)
        .map(|a| show(&[a]));
    report.record(
        "double-complement",
        false,
        &detail,
        involution.map_or(Ok(()), Err),
    );
    report.record(
        "de-morgan-meet",
        false,
        &detail,
        pairs(&|a, b| m(a, b).complement() == j(&a.complement(), &b.complement())),
    );
    report.record(
        "de-morgan-join",
        false,
        &detail,
        pairs(&|a, b| j(a, b).complement() == m(&a.complement(), &b.complement())),
    );
    report.record(
        "distributive-meet",
        false,
        &detail,
        triples(&|a, b, c| m(a, &j(b, c)) == j(&m(a, b), &m(a, c))),
    );
    report.record(
        "distributive-join",
        false,
        &detail,
        triples(&|a, b, c| j(a, &m(b, c)) == m(&j(a, b), &j(a, c))),
    );
    report.record(
        "leq-antisymmetric",
        false,
        &detail,
        pairs(&|a, b| !(a.leq(b).unwrap() && b.leq(a).unwrap()) || a == b),
    );

    report.record(
        "chi-meet",
        false,
        &detail,
        pairs(&|a, b| m(a, b).characteristic() == a.characteristic().meet(&b.characteristic())),
    );
    report.record(
        "chi-join",
        false,
        &detail,
        pairs(&|a, b| j(a, b).characteristic() == a.characteristic().join(&b.characteristic())),
    );
    let chi_neg = all
        .iter()
        .find(|a| a.complement().characteristic() != a.characteristic().one_minus())
        .map(|a| show(&[a]));
    report.record(
        "chi-complement",
        false,
        &detail,
        chi_neg.map_or(Ok(()), Err),
    );

    let detachables: Vec<ComplementedSubset> =
        ground.indicators().map(|f| f.detachable()).collect();
    let mut bijection = Ok(());
    for (f, d) in ground.indicators().zip(&detachables) {
        let back = (0..ground.len()).all(|x| d.chi_at(x) == f.value(x));
        if d.domain() != ground.full() || !back {
            bijection = Err(Value::String(f.to_bitstring()));
            break;
        }
    }
    if bijection.is_ok() {
        let distinct: std::collections::HashSet<_> = detachables.iter().collect();
        let total = all.iter().filter(|a| a.domain() == ground.full()).count();
        if distinct.len() != detachables.len() || distinct.len() != total {
            bijection = Err(serde_json::json!({
                "indicators": detachables.len(),
                "distinct_images": distinct.len(),
                "total_complemented_subsets": total,
            }));
        }
    }
    report.record(
        "detachable-bijection",
        false,
        format!("{} indicator functions", detachables.len()),
        bijection,
    );

    let n = ground.len();
    let mut apartness = Ok(());
    'outer: for x in 0..n {
        for y in 0..n {
            let xy = ground.apart(x, y);
            let irreflexive = !(x == y && xy);
            let symmetric = !xy || ground.apart(y, x);
            let cotransitive = !xy || (0..n).all(|z| ground.apart(x, z) || ground.apart(y, z));
            if !(irreflexive && symmetric && cotransitive) {
                apartness = Err(serde_json::json!([ground.label(x), ground.label(y)]));
                break 'outer;
            }
        }
    }
    report.record(
        "apartness",
        false,
        format!("all pairs of {n} points"),
        apartness,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn abc() -> GroundSet {
        GroundSet::new(["a", "b", "c"]).unwrap()
    }

    fn cs(g: &GroundSet, pos: &[&str], neg: &[&str]) -> ComplementedSubset {
        ComplementedSubset::new(
            Subset::from_labels(g, pos.iter().copied()).unwrap(),
            Subset::from_labels(g, neg.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn meet_example() {
        let g = abc();
        let a = cs(&g, &["a"], &["b"]);
        let b = cs(&g, &["b"], &["c"]);
        assert_eq!(a.meet(&b).unwrap(), cs(&g, &[], &["b"]));
        assert_eq!(a.meet(&b).unwrap().to_string(), "({}, {b})");
    }

    #[test]
    fn construction_errors() {
        let g = abc();
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(SetError::DuplicateLabel(_))
        ));
        assert!(matches!(
            ComplementedSubset::from_bits(&g, 0b001, 0b011),
            Err(SetError::NotDisjoint { .. })
        ));
        let other = GroundSet::new(["x", "y", "z"]).unwrap();
        let a = cs(&g, &["a"], &[]);
        let b = ComplementedSubset::from_bits(&other, 1, 0).unwrap();
        assert_eq!(a.meet(&b), Err(SetError::GroundMismatch));
        assert_eq!(a.leq(&b), Err(SetError::GroundMismatch));
        assert!(IndicatorFn::from_bitstring(&g, "10").is_err());
        assert!(IndicatorFn::from_bitstring(&g, "1x0").is_err());
        assert!(Subset::from_labels(&g, ["q"]).is_err());
    }

    #[test]
    fn detachable_examples() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let f = IndicatorFn::from_bitstring(&g, "10").unwrap();
        assert_eq!(f.detachable(), cs(&g, &["a"], &["b"]));
        assert_eq!(
            IndicatorFn::constant(&g, true).detachable(),
            cs(&g, &["a", "b"], &[])
        );
        assert_eq!(f.to_bitstring(), "10");
    }

    #[test]
    fn characteristic_of_empty_positive_is_zero() {
        let g = abc();
        let z = cs(&g, &[], &["a", "b", "c"]).characteristic();
        assert_eq!(z, PartialRationalFn::constant(g.full(), Rational::zero()));
    }

    #[test]
    fn partial_function_equality_ignores_outside_values() {
        let g = abc();
        let d = Subset::from_labels(&g, ["a"]).unwrap();
        let f = PartialRationalFn::new(d.clone(), vec![int(1), int(5), int(7)]);
        let h = PartialRationalFn::new(d, vec![int(1), int(0), int(0)]);
        assert_eq!(f, h);
        let e = PartialRationalFn::new(g.full(), vec![int(1), int(0), int(0)]);
        assert_ne!(f, e);
    }

    #[test]
    fn enumeration_counts() {
        let g = abc();
        assert_eq!(g.complemented_subsets().len(), 27);
        assert_eq!(g.subsets().count(), 8);
        assert_eq!(g.indicators().count(), 8);
    }
}
