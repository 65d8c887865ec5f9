//! Pre-measure spaces over a finite ground set.
//!
//! A space indexes a family of complemented subsets by a finite set `I`,
//! carries lattice operations `∧`, `∨` and a relative complement `i ∼ j` on
//! the indices, and a nonnegative rational measure `μ` on `I`. The family is
//! a subfamily of an ambient family indexed by `J` (with its own `∧`, `∨` and
//! unary `∼`) through an embedding `h: I → J`.
//!
//! The shipped instances all index the detachable subsets: `I = J` is the set
//! of indicator functions `X → 2`, the family is `f ↦ ({f = 1}, {f = 0})`,
//! `f ∧ g = fg`, `f ∨ g = f + g − fg`, `∼f = 1 − f`, and `h` is the identity.
//! An index is stored as the bit mask of its indicator.

mod check;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complemented_sets::{ComplementedSubset, GroundSet, IndicatorFn, SetError};
use crate::rational::Rational;

pub(crate) use check::ensure_size;
pub use check::{
    check_pms, empty_positive_zero, measure_split_check, monotonicity_check,
    restrict_measure_invariance,
};

/// Largest ground set for which a space's index set is materialized.
pub const MAX_SPACE_GROUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("point {0:?} is not in the ground set")]
    PointNotInGround(String),
    #[error("negative weight {weight} at {label:?}")]
    NegativeWeight { label: String, weight: String },
    #[error("all weights are zero")]
    AllZeroWeights,
    #[error("ground set has {0} elements; at most {MAX_SPACE_GROUND} are supported")]
    GroundTooLarge(usize),
    #[error("empty ground set")]
    EmptyGround,
    #[error("negative measure {value} at index {index}")]
    NegativeMeasure { index: String, value: String },
}

/// An element of an index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idx(pub u64);

type BinOp = Arc<dyn Fn(Idx, Idx) -> Idx + Send + Sync>;
type UnOp = Arc<dyn Fn(Idx) -> Idx + Send + Sync>;

/// The ambient family `ν` over `J` and the embedding `h: I → J`.
#[derive(Clone)]
pub struct Ambient {
    pub family: Vec<ComplementedSubset>,
    pub meet: BinOp,
    pub join: BinOp,
    pub not: UnOp,
    pub embed: UnOp,
}

/// Everything needed to assemble a [`PreMeasureSpace`].
pub struct SpaceParts {
    pub description: String,
    pub ground: GroundSet,
    pub family: Vec<ComplementedSubset>,
    pub measure: Vec<Rational>,
    pub meet: BinOp,
    pub join: BinOp,
    /// `i ∼ j`.
    pub diff: BinOp,
    pub labels: Vec<String>,
    pub ambient: Ambient,
}

struct Inner {
    parts: SpaceParts,
    lookup: HashMap<ComplementedSubset, Idx>,
    embed_inverse: HashMap<Idx, Idx>,
}

/// An immutable pre-measure space; cheap to clone.
#[derive(Clone)]
pub struct PreMeasureSpace(Arc<Inner>);

impl PreMeasureSpace {
    /// Assembles a space from its parts. Only well-formedness (nonnegative
    /// measure, matching table sizes) is enforced; the axioms are left to
    /// [`check_pms`].
    pub fn from_parts(parts: SpaceParts) -> Result<Self, SpaceError> {
        assert_eq!(parts.family.len(), parts.measure.len());
        assert_eq!(parts.family.len(), parts.labels.len());
        for (i, m) in parts.measure.iter().enumerate() {
            if m.is_negative() {
                return Err(SpaceError::NegativeMeasure {
                    index: parts.labels[i].clone(),
                    value: m.to_string(),
                });
            }
        }
        let mut lookup = HashMap::new();
        for (i, a) in parts.family.iter().enumerate() {
            lookup.entry(a.clone()).or_insert(Idx(i as u64));
        }
        let mut embed_inverse = HashMap::new();
        for i in 0..parts.family.len() as u64 {
            embed_inverse
                .entry((parts.ambient.embed)(Idx(i)))
                .or_insert(Idx(i));
        }
        Ok(PreMeasureSpace(Arc::new(Inner {
            parts,
            lookup,
            embed_inverse,
        })))
    }

    /// The space of detachable subsets of `ground` with measure `mu`.
    pub fn detachable(
        ground: &GroundSet,
        description: impl Into<String>,
        mu: impl Fn(&IndicatorFn) -> Rational,
    ) -> Result<Self, SpaceError> {
        let n = ground.len();
        if n == 0 {
            return Err(SpaceError::EmptyGround);
        }
        if n > MAX_SPACE_GROUND {
            return Err(SpaceError::GroundTooLarge(n));
        }
        let mask = ground.mask();
        let indicators: Vec<IndicatorFn> = ground.indicators().collect();
        let family: Vec<ComplementedSubset> = indicators.iter().map(|f| f.detachable()).collect();
        let measure = indicators.iter().map(&mu).collect();
        let labels = indicators.iter().map(|f| f.to_bitstring()).collect();
        let meet: BinOp = Arc::new(|a, b| Idx(a.0 & b.0));
        let join: BinOp = Arc::new(|a, b| Idx(a.0 | b.0));
        let diff: BinOp = Arc::new(move |a, b| Idx(a.0 & !b.0 & mask));
        let ambient = Ambient {
            family: family.clone(),
            meet: meet.clone(),
            join: join.clone(),
            not: Arc::new(move |a| Idx(!a.0 & mask)),
            embed: Arc::new(|a| a),
        };
        Self::from_parts(SpaceParts {
            description: description.into(),
            ground: ground.clone(),
            family,
            measure,
            meet,
            join,
            diff,
            labels,
            ambient,
        })
    }

    pub fn parts(&self) -> &SpaceParts {
        &self.0.parts
    }

    pub fn description(&self) -> &str {
        &self.0.parts.description
    }

    pub fn ground(&self) -> &GroundSet {
        &self.0.parts.ground
    }

    pub fn index_count(&self) -> u64 {
        self.0.parts.family.len() as u64
    }

    pub fn indices(&self) -> impl Iterator<Item = Idx> + Clone {
        (0..self.index_count()).map(Idx)
    }

    pub fn contains(&self, i: Idx) -> bool {
        i.0 < self.index_count()
    }

    /// `λ₀(i)`.
    pub fn family(&self, i: Idx) -> &ComplementedSubset {
        &self.0.parts.family[i.0 as usize]
    }

    pub fn measure(&self, i: Idx) -> &Rational {
        &self.0.parts.measure[i.0 as usize]
    }

    pub fn meet(&self, i: Idx, j: Idx) -> Idx {
        (self.0.parts.meet)(i, j)
    }

    pub fn join(&self, i: Idx, j: Idx) -> Idx {
        (self.0.parts.join)(i, j)
    }

    /// `i ∼ j`, whose family member is `λ₀(i) − λ₀(j)`.
    pub fn diff(&self, i: Idx, j: Idx) -> Idx {
        (self.0.parts.diff)(i, j)
    }

    pub fn label(&self, i: Idx) -> &str {
        &self.0.parts.labels[i.0 as usize]
    }

    pub fn ambient(&self) -> &Ambient {
        &self.0.parts.ambient
    }

    /// An index whose family member equals `a`, if any.
    pub fn find_index(&self, a: &ComplementedSubset) -> Option<Idx> {
        self.0.lookup.get(a).copied()
    }

    /// The `k ∈ I` with `h(k) = j`, if any.
    pub fn embed_preimage(&self, j: Idx) -> Option<Idx> {
        self.0.embed_inverse.get(&j).copied()
    }

    /// Index whose label is `s` (the indicator bitstring for detachable
    /// spaces).
    pub fn index_of_label(&self, s: &str) -> Option<Idx> {
        self.0
            .parts
            .labels
            .iter()
            .position(|l| l == s)
            .map(|i| Idx(i as u64))
    }

    /// `⋁ₖ (iₖ ∼ iₖ)`: family member `(∅, F)` with `F` the common domain of
    /// the `iₖ`. `None` for an empty list.
    pub fn null_join(&self, is: &[Idx]) -> Option<Idx> {
        is.iter()
            .map(|&i| self.diff(i, i))
            .reduce(|a, b| self.join(a, b))
    }

    /// `⋀ₖ iₖ`, `None` for an empty list.
    pub fn meet_all(&self, is: impl IntoIterator<Item = Idx>) -> Option<Idx> {
        is.into_iter().reduce(|a, b| self.meet(a, b))
    }

    /// `⋁ₖ iₖ`, `None` for an empty list.
    pub fn join_all(&self, is: impl IntoIterator<Item = Idx>) -> Option<Idx> {
        is.into_iter().reduce(|a, b| self.join(a, b))
    }
}

impl fmt::Debug for PreMeasureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PreMeasureSpace({})", self.description())
    }
}

/// The Dirac measure at `point`: `μ(f) = f(point)`.
pub fn dirac(ground: &GroundSet, point: &str) -> Result<PreMeasureSpace, SpaceError> {
    let x0 = ground
        .position(point)
        .map_err(|_| SpaceError::PointNotInGround(point.to_string()))?;
    PreMeasureSpace::detachable(ground, format!("dirac at {point}"), |f| {
        Rational::from_integer(f.value(x0).into())
    })
}

/// `μ(f) = Σ_{f(x) = 1} w(x)`. Missing labels weigh 0.
pub fn weighted_counting(
    ground: &GroundSet,
    weights: &[(String, Rational)],
) -> Result<PreMeasureSpace, SpaceError> {
    let mut w = vec![Rational::zero(); ground.len()];
    for (label, value) in weights {
        let i = ground.position(label)?;
        if value.is_negative() {
            return Err(SpaceError::NegativeWeight {
                label: label.clone(),
                weight: value.to_string(),
            });
        }
        w[i] = value.clone();
    }
    if w.iter().all(Zero::is_zero) {
        return Err(SpaceError::AllZeroWeights);
    }
    PreMeasureSpace::detachable(ground, "weighted counting", |f| {
        (0..w.len())
            .filter(|&i| f.value(i) == 1)
            .map(|i| w[i].clone())
            .sum()
    })
}

/// A detachable space with an explicitly tabulated measure, keyed by
/// indicator bitstring; unlisted indices get `default`. No axiom is assumed,
/// which makes this the way to describe deliberately broken spaces.
pub fn explicit_measure(
    ground: &GroundSet,
    values: &[(String, Rational)],
    default: Rational,
) -> Result<PreMeasureSpace, SpaceError> {
    let mut table = HashMap::new();
    for (bits, value) in values {
        let f = IndicatorFn::from_bitstring(ground, bits)?;
        table.insert(f.bits(), value.clone());
    }
    PreMeasureSpace::detachable(ground, "explicit measure", |f| {
        table
            .get(&f.bits())
            .cloned()
            .unwrap_or_else(|| default.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn abc() -> GroundSet {
        GroundSet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn dirac_values() {
        let g = abc();
        let s = dirac(&g, "a").unwrap();
        assert_eq!(s.index_count(), 8);
        let one = s.index_of_label("111").unwrap();
        let zero = s.index_of_label("000").unwrap();
        assert_eq!(*s.measure(one), int(1));
        assert_eq!(*s.measure(zero), int(0));
        let f = s.index_of_label("100").unwrap();
        let h = s.index_of_label("011").unwrap();
        let lhs = s.measure(f) + s.measure(h);
        let rhs = s.measure(s.join(f, h)) + s.measure(s.meet(f, h));
        assert_eq!(lhs, int(1));
        assert_eq!(rhs, int(1));
        assert!(matches!(
            dirac(&g, "z"),
            Err(SpaceError::PointNotInGround(_))
        ));
    }

    #[test]
    fn weighted_validation() {
        let g = abc();
        assert!(matches!(
            weighted_counting(&g, &[("a".into(), int(-1))]),
            Err(SpaceError::NegativeWeight { .. })
        ));
        assert_eq!(
            weighted_counting(&g, &[("a".into(), int(0))]).unwrap_err(),
            SpaceError::AllZeroWeights
        );
        let s = weighted_counting(&g, &[("a".into(), int(2)), ("c".into(), int(3))]).unwrap();
        assert_eq!(*s.measure(s.index_of_label("111").unwrap()), int(5));
    }

    #[test]
    fn ground_limits() {
        let big = GroundSet::new((0..17).map(|i| format!("x{i}"))).unwrap();
        assert_eq!(
            dirac(&big, "x0").unwrap_err(),
            SpaceError::GroundTooLarge(17)
        );
        let empty = GroundSet::new(Vec::<String>::new()).unwrap();
        assert_eq!(
            PreMeasureSpace::detachable(&empty, "", |_| int(0)).unwrap_err(),
            SpaceError::EmptyGround
        );
    }

    #[test]
    fn null_join_has_empty_positive_part() {
        let g = abc();
        let s = dirac(&g, "b").unwrap();
        let is = [Idx(3), Idx(5)];
        let z = s.null_join(&is).unwrap();
        assert!(s.family(z).pos().is_empty());
        assert_eq!(s.family(z).neg(), &g.full());
        assert!(s.null_join(&[]).is_none());
    }
}
