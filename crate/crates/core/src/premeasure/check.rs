//! Brute-force checks of the pre-measure space axioms and their first
//! consequences.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Idx, PreMeasureSpace};
use crate::report::{CheckConfig, CheckError, Report};

pub(crate) fn ensure_size(space: &PreMeasureSpace, config: &CheckConfig) -> Result<(), CheckError> {
    let n = space.ground().len();
    if n > config.max_ground {
        return Err(CheckError::GroundTooLarge {
            size: n,
            max: config.max_ground,
        });
    }
    Ok(())
}

/// Runs `f` over every pair, stopping at the first counterexample.
fn all_pairs<A: Copy, B: Copy>(
    xs: impl Iterator<Item = A> + Clone,
    ys: impl Iterator<Item = B> + Clone,
    mut f: impl FnMut(A, B) -> Result<(), serde_json::Value>,
) -> Result<(), serde_json::Value> {
    for a in xs {
        for b in ys.clone() {
            f(a, b)?;
        }
    }
    Ok(())
}

/// The axioms of a pre-measure space, checked exhaustively over the finite
/// index sets.
///
/// The countable condition on descending meets is checked in its finite
/// form: a sequence of finite meets of indices is eventually constant at an
/// element `c` of the meet-closure of `I`, with `λ₀¹(c)` the intersection of
/// the positive parts, so the condition holds iff every `c` in the
/// meet-closure with `μ(c) > 0` has an inhabited positive part.
pub fn check_pms(space: &PreMeasureSpace, config: &CheckConfig) -> Result<Report, CheckError> {
    ensure_size(space, config)?;
    let mut report = Report::new("pms");
    report.note(format!("space: {}", space.description()));
    report.note(
        "PMS4 is checked as: mu(c) > 0 implies pos(c) inhabited, for every c in the \
         meet-closure of I; over a finite index set every descending meet sequence is \
         eventually constant at such a c",
    );
    report.note("PMS1 modularity reads mu(i) + mu(j) = mu(i v j) + mu(i ^ j)");

    let amb = space.ambient();
    let js = (0..amb.family.len() as u64).map(Idx);
    let jl = |j: Idx| json!(j.0);
    let is = space.indices();
    let il = |i: Idx| json!(space.label(i));

    report.record(
        "PMS1.meet",
        false,
        "nu(i ^ j) = nu(i) ^ nu(j) for all i, j in J",
        all_pairs(js.clone(), js.clone(), |i, j| {
            let lhs = &amb.family[(amb.meet)(i, j).0 as usize];
            let rhs = amb.family[i.0 as usize]
                .meet(&amb.family[j.0 as usize])
                .expect("same ground");
            if *lhs == rhs {
                Ok(())
            } else {
                Err(json!({"i": jl(i), "j": jl(j), "lhs": lhs.to_string(), "rhs": rhs.to_string()}))
            }
        }),
    );
    report.record(
        "PMS1.join",
        false,
        "nu(i v j) = nu(i) v nu(j) for all i, j in J",
        all_pairs(js.clone(), js.clone(), |i, j| {
            let lhs = &amb.family[(amb.join)(i, j).0 as usize];
            let rhs = amb.family[i.0 as usize]
                .join(&amb.family[j.0 as usize])
                .expect("same ground");
            if *lhs == rhs {
                Ok(())
            } else {
                Err(json!({"i": jl(i), "j": jl(j), "lhs": lhs.to_string(), "rhs": rhs.to_string()}))
            }
        }),
    );
    report.record(
        "PMS1.complement",
        false,
        "nu(~i) = -nu(i) for all i in J",
        js.clone().try_for_each(|i| {
            let lhs = &amb.family[(amb.not)(i).0 as usize];
            let rhs = amb.family[i.0 as usize].complement();
            if *lhs == rhs {
                Ok(())
            } else {
                Err(json!({"i": jl(i), "lhs": lhs.to_string(), "rhs": rhs.to_string()}))
            }
        }),
    );
    report.record(
        "PMS1.subfamily",
        false,
        "nu(h(i)) = lambda(i) for all i in I, h injective",
        is.clone().try_for_each(|i| {
            let hi = (amb.embed)(i);
            let lhs = &amb.family[hi.0 as usize];
            if lhs != space.family(i) {
                return Err(json!({"i": il(i), "nu(h(i))": lhs.to_string(), "lambda(i)": space.family(i).to_string()}));
            }
            if space.embed_preimage(hi) != Some(i) {
                return Err(json!({"i": il(i), "reason": "h is not injective"}));
            }
            Ok(())
        }),
    );
    report.record(
        "PMS1.embedding",
        false,
        "h(i ^ j) = h(i) ^ h(j), h(i v j) = h(i) v h(j), h(i ~ j) = h(i) ^ ~h(j)",
        all_pairs(is.clone(), is.clone(), |i, j| {
            let (hi, hj) = ((amb.embed)(i), (amb.embed)(j));
            let checks = [
                ("meet", (amb.embed)(space.meet(i, j)), (amb.meet)(hi, hj)),
                ("join", (amb.embed)(space.join(i, j)), (amb.join)(hi, hj)),
                (
                    "diff",
                    (amb.embed)(space.diff(i, j)),
                    (amb.meet)(hi, (amb.not)(hj)),
                ),
            ];
            for (op, lhs, rhs) in checks {
                if lhs != rhs {
                    return Err(json!({"op": op, "i": il(i), "j": il(j)}));
                }
            }
            Ok(())
        }),
    );
    report.record(
        "PMS1.modularity",
        false,
        "mu(i) + mu(j) = mu(i v j) + mu(i ^ j) for all i, j in I",
        all_pairs(is.clone(), is.clone(), |i, j| {
            let lhs = space.measure(i) + space.measure(j);
            let rhs = space.measure(space.join(i, j)) + space.measure(space.meet(i, j));
            if lhs == rhs {
                Ok(())
            } else {
                Err(json!({
                    "i": il(i),
                    "j": il(j),
                    "mu(i) + mu(j)": lhs.to_string(),
                    "mu(i v j) + mu(i ^ j)": rhs.to_string(),
                }))
            }
        }),
    );

    let mut vacuous = 0usize;
    let pms2 = all_pairs(is.clone(), js.clone(), |i, j| {
        let hi = (amb.embed)(i);
        let Some(k) = space.embed_preimage((amb.meet)(hi, j)) else {
            vacuous += 1;
            return Ok(());
        };
        let Some(l) = space.embed_preimage((amb.meet)(hi, (amb.not)(j))) else {
            return Err(
                json!({"i": il(i), "j": jl(j), "k": il(k), "reason": "no l with h(l) = h(i) ^ ~j"}),
            );
        };
        let rhs = space.measure(k) + space.measure(l);
        if *space.measure(i) == rhs {
            Ok(())
        } else {
            Err(json!({
                "i": il(i), "j": jl(j), "k": il(k), "l": il(l),
                "mu(i)": space.measure(i).to_string(),
                "mu(k) + mu(l)": rhs.to_string(),
            }))
        }
    });
    report.record(
        "PMS2",
        false,
        format!(
            "mu(i) = mu(k) + mu(l) with witnesses found by search; {vacuous} (i, j) pairs had no k"
        ),
        pms2,
    );

    match space.indices().find(|&i| space.measure(i).is_positive()) {
        Some(i) => report.pass(
            "PMS3",
            format!("mu({}) = {} > 0", space.label(i), space.measure(i)),
        ),
        None => report.fail(
            "PMS3",
            "no index has positive measure",
            json!({"indices": space.index_count()}),
        ),
    }

    let closure = meet_closure(space);
    report.record(
        "PMS4",
        false,
        format!(
            "every one of the {} meets with positive measure has an inhabited positive part",
            closure.len()
        ),
        closure.iter().try_for_each(|&c| {
            if space.measure(c).is_positive() && space.family(c).pos().is_empty() {
                Err(json!({"c": il(c), "mu(c)": space.measure(c).to_string()}))
            } else {
                Ok(())
            }
        }),
    );

    report.record(
        "family.injective",
        false,
        "distinct indices name distinct complemented subsets",
        is.clone()
            .try_for_each(|i| match space.find_index(space.family(i)) {
                Some(k) if k != i => {
                    Err(json!({"i": il(i), "j": il(k), "subset": space.family(i).to_string()}))
                }
                _ => Ok(()),
            }),
    );
    Ok(report)
}

/// All finite meets of indices.
fn meet_closure(space: &PreMeasureSpace) -> BTreeSet<Idx> {
    let mut closure: BTreeSet<Idx> = space.indices().collect();
    loop {
        let snapshot: Vec<Idx> = closure.iter().copied().collect();
        let mut grew = false;
        for &a in &snapshot {
            for &b in &snapshot {
                grew |= closure.insert(space.meet(a, b));
            }
        }
        if !grew {
            return closure;
        }
    }
}

/// Every index with an empty positive part has measure zero; in particular
/// `μ(i ∼ i) = 0`.
pub fn empty_positive_zero(space: &PreMeasureSpace) -> Report {
    let mut report = Report::new("empty-positive-zero");
    let il = |i: Idx| json!(space.label(i));
    report.record(
        "empty-positive",
        false,
        "pos(i) empty implies mu(i) = 0",
        space.indices().try_for_each(|i| {
            if space.family(i).pos().is_empty() && !space.measure(i).is_zero() {
                Err(json!({"i": il(i), "mu(i)": space.measure(i).to_string()}))
            } else {
                Ok(())
            }
        }),
    );
    report.record(
        "self-difference",
        false,
        "mu(i ~ i) = 0",
        space.indices().try_for_each(|i| {
            let d = space.diff(i, i);
            if space.measure(d).is_zero() {
                Ok(())
            } else {
                Err(json!({"i": il(i), "mu(i ~ i)": space.measure(d).to_string()}))
            }
        }),
    );
    report
}

/// `μ(i) = μ(i ∧ j) + μ(i ∼ j)` for every pair.
pub fn measure_split_check(space: &PreMeasureSpace) -> Report {
    let mut report = Report::new("measure-split");
    report.record(
        "split",
        false,
        "mu(i) = mu(i ^ j) + mu(i ~ j)",
        all_pairs(space.indices(), space.indices(), |i, j| {
            let rhs = space.measure(space.meet(i, j)) + space.measure(space.diff(i, j));
            if *space.measure(i) == rhs {
                Ok(())
            } else {
                Err(json!({"i": space.label(i), "j": space.label(j)}))
            }
        }),
    );
    report
}

fn random_tuple(space: &PreMeasureSpace, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Idx> {
    let n = rng.gen_range(0..=max_len);
    (0..n)
        .map(|_| Idx(rng.gen_range(0..space.index_count())))
        .collect()
}

/// Restriction to a common domain keeps the measure: with `l = ⋁(iₖ ∼ iₖ)`
/// and `k = j ∼ l`, `λ₀(k) = (λ₀¹(j) ∩ F, λ₀⁰(j) ∩ F)` and `μ(k) = μ(j)` where
/// `F = ⋂ (λ₀¹(iₖ) ∪ λ₀⁰(iₖ))`.
pub fn restrict_measure_invariance(space: &PreMeasureSpace, config: &CheckConfig) -> Report {
    let mut report = Report::new("restrict-measure");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let check = |j: Idx, is: &[Idx]| -> Result<(), serde_json::Value> {
        let k = match space.null_join(is) {
            Some(l) => space.diff(j, l),
            None => j,
        };
        let f = is
            .iter()
            .map(|&i| space.family(i).domain())
            .fold(space.ground().full(), |a, b| a.intersection(&b));
        let fam = space.family(j);
        let want = (fam.pos().intersection(&f), fam.neg().intersection(&f));
        let got = space.family(k);
        let labels: Vec<&str> = is.iter().map(|&i| space.label(i)).collect();
        if (got.pos(), got.neg()) != (&want.0, &want.1) {
            return Err(json!({"j": space.label(j), "tuple": labels, "k": got.to_string()}));
        }
        if space.measure(k) != space.measure(j) {
            return Err(json!({
                "j": space.label(j), "tuple": labels,
                "mu(j)": space.measure(j).to_string(), "mu(k)": space.measure(k).to_string(),
            }));
        }
        Ok(())
    };
    let exhaustive = all_pairs(space.indices(), space.indices(), |j, i| {
        check(j, &[])?;
        check(j, &[i])
    });
    let sampled = (0..config.samples).try_for_each(|_| {
        let j = Idx(rng.gen_range(0..space.index_count()));
        let is = random_tuple(space, &mut rng, 4);
        check(j, &is)
    });
    report.record(
        "restrict.exhaustive",
        false,
        "all j with tuples of length 0 and 1",
        exhaustive,
    );
    report.record(
        "restrict.sampled",
        true,
        format!("{} sampled (j, i_1..i_n), n <= 4", config.samples),
        sampled,
    );
    report
}

/// `χ_{λ₀(i)} <= χ_{λ₀(j)}` on `F' = F_i ∩ F_j ∩ F` implies `μ(i) <= μ(j)`.
pub fn monotonicity_check(space: &PreMeasureSpace, config: &CheckConfig) -> Report {
    let mut report = Report::new("monotonicity");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x6d6f_6e6f);
    let mut applicable = 0usize;
    let mut check = |i: Idx, j: Idx, is: &[Idx]| -> Result<(), serde_json::Value> {
        let (a, b) = (space.family(i), space.family(j));
        let f = is
            .iter()
            .map(|&t| space.family(t).domain())
            .fold(a.domain().intersection(&b.domain()), |x, y| {
                x.intersection(&y)
            });
        let below = f.elements().all(|x| a.chi_at(x) <= b.chi_at(x));
        if !below {
            return Ok(());
        }
        applicable += 1;
        if space.measure(i) <= space.measure(j) {
            Ok(())
        } else {
            let labels: Vec<&str> = is.iter().map(|&t| space.label(t)).collect();
            Err(json!({
                "i": space.label(i), "j": space.label(j), "tuple": labels,
                "mu(i)": space.measure(i).to_string(), "mu(j)": space.measure(j).to_string(),
            }))
        }
    };
    let exhaustive = all_pairs(space.indices(), space.indices(), |i, j| {
        check(i, j, &[])?;
        space.indices().try_for_each(|t| check(i, j, &[t]))
    });
    let sampled = (0..config.samples).try_for_each(|_| {
        let i = Idx(rng.gen_range(0..space.index_count()));
        let j = Idx(rng.gen_range(0..space.index_count()));
        let is = random_tuple(space, &mut rng, 4);
        check(i, j, &is)
    });
    report.record(
        "monotone.exhaustive",
        false,
        "all (i, j) with restriction tuples of length 0 and 1",
        exhaustive,
    );
    report.record(
        "monotone.sampled",
        true,
        format!(
            "{} sampled (i, j, i_1..i_n); {applicable} comparisons applied",
            config.samples
        ),
        sampled,
    );
    report
}
