//! Checkers for the pre-integration space axioms on `S(I)` and their first
//! consequences.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gen::{
    equal_variant, grid_functions, random_nonneg_simple, random_rational, random_simple,
    small_integer_grid,
};
use super::{
    abs_sf, add, check_nonneg, disjrep, domain, integral, meet_one, phi_n, raw_value, scalar_mul,
    sf_equal, SimpleFunction,
};
use crate::complemented_sets::Subset;
use crate::premeasure::{ensure_size, PreMeasureSpace};
use crate::rational::{int, ratio, Rational};
use crate::report::{CheckConfig, CheckError, Report};

/// Domain and values of `f_v`, with values outside the domain left as 0.
struct Table {
    dom: Subset,
    vals: Vec<Rational>,
}

impl Table {
    fn of(space: &PreMeasureSpace, v: &SimpleFunction) -> Table {
        let dom = domain(space, v);
        let vals = (0..space.ground().len())
            .map(|x| {
                if dom.contains(x) {
                    raw_value(space, v, x)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Table { dom, vals }
    }
}

fn show(v: &SimpleFunction) -> String {
    format!("{v:?}")
}

/// `f_lhs` has domain `dom` and agrees with `want` on it.
fn agrees(
    space: &PreMeasureSpace,
    lhs: &SimpleFunction,
    dom: &Subset,
    want: impl Fn(usize) -> Rational,
) -> Result<(), Value> {
    let got = domain(space, lhs);
    if got != *dom {
        return Err(json!({"domain": got.to_string(), "expected domain": dom.to_string()}));
    }
    for x in dom.elements() {
        let value = raw_value(space, lhs, x);
        let w = want(x);
        if value != w {
            return Err(json!({
                "x": space.ground().label(x),
                "value": value.to_string(),
                "expected": w.to_string(),
            }));
        }
    }
    Ok(())
}

fn with_context(r: Result<(), Value>, ctx: Value) -> Result<(), Value> {
    r.map_err(|e| json!({"case": ctx, "mismatch": e}))
}

/// The scalar, absolute value and `∧₁` identities for one `(a, v)`.
fn pis1_unary(space: &PreMeasureSpace, a: &Rational, v: &SimpleFunction) -> Result<(), Value> {
    let tv = Table::of(space, v);
    let ctx = || json!({"a": a.to_string(), "v": show(v)});
    with_context(
        agrees(space, &scalar_mul(a, v), &tv.dom, |x| a * &tv.vals[x]),
        json!({"identity": "f(a v) = a f(v)", "at": ctx()}),
    )?;
    with_context(
        agrees(space, &abs_sf(space, v), &tv.dom, |x| tv.vals[x].abs()),
        json!({"identity": "f(|v|) = |f(v)|", "at": ctx()}),
    )?;
    with_context(
        agrees(space, &meet_one(space, v), &tv.dom, |x| {
            tv.vals[x].clone().min(Rational::one())
        }),
        json!({"identity": "f(v ^ 1) = f(v) ^ 1", "at": ctx()}),
    )
}

/// Additivity of `f` for `(v, w)` and linearity of the integral for every
/// `(a, b)` in `scalars`.
fn pis1_binary(
    space: &PreMeasureSpace,
    scalars: &[(Rational, Rational)],
    v: &SimpleFunction,
    w: &SimpleFunction,
) -> Result<(), Value> {
    let (tv, tw) = (Table::of(space, v), Table::of(space, w));
    let both = tv.dom.intersection(&tw.dom);
    with_context(
        agrees(space, &add(v, w), &both, |x| &tv.vals[x] + &tw.vals[x]),
        json!({"identity": "f(v + w) = f(v) + f(w)", "at": {"v": show(v), "w": show(w)}}),
    )?;
    let (iv, iw) = (integral(space, v), integral(space, w));
    for (a, b) in scalars {
        let lhs = integral(space, &add(&scalar_mul(a, v), &scalar_mul(b, w)));
        let rhs = a * &iv + b * &iw;
        if lhs != rhs {
            return Err(json!({
                "identity": "int(a v + b w) = a int(v) + b int(w)",
                "at": {"a": a.to_string(), "b": b.to_string(), "v": show(v), "w": show(w)},
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
            }));
        }
    }
    Ok(())
}

/// A point of `F_v ∩ ⋂ F_α(n)` where `f_v(x) > Σ f_α(n)(x)`, scanning
/// the ground set.
fn witness(space: &PreMeasureSpace, v: &SimpleFunction, alpha: &[SimpleFunction]) -> Option<usize> {
    let dom = alpha
        .iter()
        .map(|a| domain(space, a))
        .fold(domain(space, v), |d, e| d.intersection(&e));
    let found = dom.elements().find(|&x| {
        let tail: Rational = alpha.iter().map(|a| raw_value(space, a, x)).sum();
        raw_value(space, v, x) > tail
    });
    found
}

fn total_integral(space: &PreMeasureSpace, alpha: &[SimpleFunction]) -> Rational {
    alpha.iter().map(|a| integral(space, a)).sum()
}

fn pis2_instance(
    space: &PreMeasureSpace,
    v: &SimpleFunction,
    alpha: &[SimpleFunction],
) -> Result<(), Value> {
    match witness(space, v, alpha) {
        Some(_) => Ok(()),
        None => Err(json!({
            "v": show(v),
            "alpha": alpha.iter().map(show).collect::<Vec<_>>(),
            "int v": integral(space, v).to_string(),
            "sum int alpha": total_integral(space, alpha).to_string(),
        })),
    }
}

/// Up to three nonnegative functions rescaled so that their integrals sum
/// to `r·∫v` (left alone when they all integrate to 0).
fn scaled_alpha(
    space: &PreMeasureSpace,
    rng: &mut impl Rng,
    target: &Rational,
    r: &Rational,
) -> Vec<SimpleFunction> {
    let k = rng.gen_range(0..=3);
    let alpha: Vec<SimpleFunction> = (0..k)
        .map(|_| random_nonneg_simple(space, rng, 3))
        .collect();
    let s = total_integral(space, &alpha);
    if s.is_zero() {
        return alpha;
    }
    let t = target * r / s;
    alpha.iter().map(|a| scalar_mul(&t, a)).collect()
}

/// `α(m) = m·∧₁(m⁻¹·v)`.
fn alpha_m(space: &PreMeasureSpace, v: &SimpleFunction, m: u64) -> SimpleFunction {
    let m = int(m as i64);
    scalar_mul(&m, &meet_one(space, &scalar_mul(&m.recip(), v)))
}

/// `β(m) = m⁻¹·∧₁(m·|v|)`.
fn beta_m(space: &PreMeasureSpace, v: &SimpleFunction, m: u64) -> SimpleFunction {
    let m = int(m as i64);
    scalar_mul(
        &m.recip(),
        &meet_one(space, &scalar_mul(&m, &abs_sf(space, v))),
    )
}

const PIS4_M: u64 = 64;

/// The stabilization argument for one `v`, at `m = 1..=64`.
fn pis4_instance(space: &PreMeasureSpace, v: &SimpleFunction) -> Result<(), Value> {
    let tv = Table::of(space, v);
    let top = tv
        .dom
        .elements()
        .map(|x| tv.vals[x].abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let int_v = integral(space, v);
    let d = disjrep(space, v).map_err(|e| json!({"v": show(v), "error": e.to_string()}))?;
    let c: Rational = d
        .terms
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .map(|t| space.measure(t.index).clone())
        .sum();
    let mut prev: Option<Rational> = None;
    for m in 1..=PIS4_M {
        let mq = int(m as i64);
        let am = alpha_m(space, v, m);
        agrees(space, &am, &tv.dom, |x| tv.vals[x].clone().min(mq.clone()))
            .map_err(|e| json!({"v": show(v), "m": m, "alpha(m)": e}))?;
        if mq > top && !(sf_equal(space, &am, v) && integral(space, &am) == int_v) {
            return Err(
                json!({"v": show(v), "m": m, "reason": "alpha(m) has not stabilized at v"}),
            );
        }
        let ib = integral(space, &beta_m(space, v, m));
        let inv = mq.recip();
        let want: Rational = d
            .terms
            .iter()
            .map(|t| t.coeff.abs().min(inv.clone()) * space.measure(t.index))
            .sum();
        if ib != want {
            return Err(
                json!({"v": show(v), "m": m, "int beta(m)": ib.to_string(), "expected": want.to_string()}),
            );
        }
        let bound = &c * &inv;
        if ib > bound {
            return Err(
                json!({"v": show(v), "m": m, "int beta(m)": ib.to_string(), "C/m": bound.to_string()}),
            );
        }
        let saturated = d
            .terms
            .iter()
            .all(|t| t.coeff.is_zero() || t.coeff.abs() * &mq >= Rational::one());
        if saturated && ib != bound {
            return Err(
                json!({"v": show(v), "m": m, "reason": "int beta(m) != C/m once m|a| >= 1"}),
            );
        }
        if let Some(p) = &prev {
            if ib > *p {
                return Err(json!({"v": show(v), "m": m, "reason": "int beta(m) increased"}));
            }
        }
        prev = Some(ib);
    }
    Ok(())
}

fn one_term_grid(space: &PreMeasureSpace) -> Vec<SimpleFunction> {
    grid_functions(space, &small_integer_grid(), 1)
}

/// The axioms PIS1–PIS4 for `S(I)` over `space`.
///
/// PIS1 and PIS3 are swept exhaustively over one-term functions with
/// coefficients in `{-2, ..., 2}` and then sampled; PIS2 can only be
/// sampled, over finitely supported sequences; PIS4 follows the
/// stabilization argument for `m = 1, ..., 64`.
pub fn check_pis_simple(
    space: &PreMeasureSpace,
    config: &CheckConfig,
) -> Result<Report, CheckError> {
    ensure_size(space, config)?;
    let mut report = Report::new("pis-simple");
    report.note(format!("space: {}", space.description()));
    report.note(
        "PIS2 is checked on finitely supported sequences alpha, rescaled so that \
         sum int alpha = r int v for r in {1/2, 3/4, 9/10, 99/100}",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let grid = one_term_grid(space);
    let scalars = [int(-2), ratio(-1, 2), int(0), int(1), int(3)];
    let pairs: Vec<(Rational, Rational)> = scalars
        .iter()
        .flat_map(|a| scalars.iter().map(move |b| (a.clone(), b.clone())))
        .collect();

    let exhaustive = (|| {
        for v in &grid {
            for a in &scalars {
                pis1_unary(space, a, v)?;
            }
            for w in &grid {
                pis1_binary(space, &pairs, v, w)?;
            }
        }
        Ok(())
    })();
    report.record(
        "PIS1.exhaustive",
        false,
        format!(
            "{} one-term functions (and 0) squared, scalars in {{-2, -1/2, 0, 1, 3}}",
            grid.len()
        ),
        exhaustive,
    );
    let sampled = (0..config.samples).try_for_each(|_| {
        let v = random_simple(space, &mut rng, 4);
        let w = random_simple(space, &mut rng, 4);
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        pis1_unary(space, &a, &v)?;
        pis1_binary(space, &[(a, b)], &v, &w)
    });
    report.record(
        "PIS1.sampled",
        true,
        format!("{} random (a, b, v, w) with up to 4 terms", config.samples),
        sampled,
    );

    let ratios = [ratio(1, 2), ratio(3, 4), ratio(9, 10), ratio(99, 100)];
    let mut instances = 0usize;
    let mut attempts = 0usize;
    let mut pis2 = Ok(());
    // the constant 1 against half of itself
    if let Some(full) = space.index_of_label(&"1".repeat(space.ground().len())) {
        let v = SimpleFunction::single(int(1), full);
        let alpha = vec![SimpleFunction::single(ratio(1, 2), full)];
        if integral(space, &v) > total_integral(space, &alpha) {
            pis2 = pis2_instance(space, &v, &alpha);
            instances += 1;
        }
    }
    while pis2.is_ok()
        && instances < config.samples.max(1) + 1
        && attempts < 50 * config.samples.max(1)
    {
        attempts += 1;
        let v = random_simple(space, &mut rng, 4);
        let int_v = integral(space, &v);
        if !int_v.is_positive() {
            continue;
        }
        let r = &ratios[rng.gen_range(0..ratios.len())];
        let alpha = scaled_alpha(space, &mut rng, &int_v, r);
        debug_assert!(total_integral(space, &alpha) < int_v);
        pis2 = pis2_instance(space, &v, &alpha);
        instances += 1;
    }
    report.record(
        "PIS2",
        true,
        format!("{instances} instances with sum int alpha < int v; witness searched over the ground set"),
        pis2,
    );

    let positive: Vec<_> = space
        .indices()
        .filter(|&i| space.measure(i).is_positive())
        .collect();
    let pis3 = positive.iter().try_for_each(|&i| {
        let v = SimpleFunction::single(space.measure(i).recip(), i);
        let value = integral(space, &v);
        if value == Rational::one() {
            Ok(())
        } else {
            Err(json!({"i": space.label(i), "int v": value.to_string()}))
        }
    });
    if positive.is_empty() {
        report.fail("PIS3", "no index has positive measure", json!({}));
    } else {
        report.record(
            "PIS3",
            false,
            format!(
                "int (1/mu(i), i) = 1 for all {} indices with mu(i) > 0",
                positive.len()
            ),
            pis3,
        );
    }

    let mut pis4_inputs = grid.clone();
    pis4_inputs.extend((0..config.samples).map(|_| random_simple(space, &mut rng, 4)));
    let pis4 = pis4_inputs.iter().try_for_each(|v| pis4_instance(space, v));
    report.record(
        "PIS4",
        true,
        format!(
            "{} functions, m = 1..={PIS4_M}: alpha(m) = min(f_v, m) and equals v once m > max|f_v|; \
             int beta(m) = sum min(|a|, 1/m) mu, bounded by C/m and nonincreasing",
            pis4_inputs.len()
        ),
        pis4,
    );
    Ok(report)
}

/// The guarantees of `φ_N` on nonnegative functions, `N = 1..=8`: its
/// complemented subset lies in the domain of `v`, `f_v < 1/N` on its
/// negative part, and `μ(φ_N(v)) ≤ 2N·∫v`. Also checks that equal functions
/// give equal complemented subsets and reports the largest observed
/// `μ(φ_N(v)) / (N·∫v)`.
pub fn phi_n_bound_check(
    space: &PreMeasureSpace,
    config: &CheckConfig,
) -> Result<Report, CheckError> {
    ensure_size(space, config)?;
    let mut report = Report::new("phi-n");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut inputs: Vec<SimpleFunction> =
        grid_functions(space, &[int(0), ratio(1, 2), int(1), int(2)], 1);
    inputs.extend((0..config.samples).map(|_| random_nonneg_simple(space, &mut rng, 4)));
    let mut sharpest = Rational::zero();
    let mut guarantees = Ok(());
    let mut function = Ok(());
    'outer: for v in &inputs {
        if check_nonneg(space, v).is_err() {
            continue;
        }
        let tv = Table::of(space, v);
        let int_v = integral(space, v);
        for n in 1..=8u64 {
            let nq = int(n as i64);
            let p = match phi_n(space, v, n) {
                Ok(p) => p,
                Err(e) => {
                    guarantees = Err(json!({"v": show(v), "N": n, "error": e.to_string()}));
                    break 'outer;
                }
            };
            let fam = space.family(p);
            let mu = space.measure(p);
            let fail = |reason: &str| json!({"v": show(v), "N": n, "phi": space.label(p), "reason": reason});
            if !fam.domain().is_subset_of(&tv.dom) {
                guarantees = Err(fail("complemented subset leaves the domain of v"));
                break 'outer;
            }
            if fam.neg().elements().any(|x| tv.vals[x] >= nq.recip()) {
                guarantees = Err(fail("f_v >= 1/N on the negative part"));
                break 'outer;
            }
            if *mu > int(2) * &nq * &int_v {
                guarantees = Err(fail("mu(phi) > 2N int v"));
                break 'outer;
            }
            if int_v.is_positive() {
                let ratio = mu / (&nq * &int_v);
                if ratio > sharpest {
                    sharpest = ratio;
                }
            }
            if function.is_ok() {
                let w = equal_variant(space, v, &mut rng);
                match phi_n(space, &w, n) {
                    Ok(q) if space.family(q) == fam => {}
                    other => {
                        function = Err(json!({
                            "v": show(v),
                            "w": show(&w),
                            "N": n,
                            "phi(v)": fam.to_string(),
                            "phi(w)": other.map(|q| space.family(q).to_string()).unwrap_or_else(|e| e.to_string()),
                        }));
                    }
                }
            }
        }
    }
    report.record(
        "bounds",
        true,
        format!("{} nonnegative functions, N = 1..=8", inputs.len()),
        guarantees,
    );
    report.record(
        "function",
        true,
        "v = w implies phi_N(v) and phi_N(w) name the same complemented subset",
        function,
    );
    report.note(format!(
        "largest observed mu(phi_N(v)) / (N int v) = {sharpest} (stated bound: 2)"
    ));
    Ok(report)
}

/// Consequences of the axioms: nonnegative functions have nonnegative
/// integral, `|∫v| ≤ ∫|v|`, the integral is monotone on common domains, and
/// a positive total integral forces a point with positive total value.
pub fn pis_basic_lemmas(
    space: &PreMeasureSpace,
    config: &CheckConfig,
) -> Result<Report, CheckError> {
    ensure_size(space, config)?;
    let mut report = Report::new("pis-lemmas");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let grid = grid_functions(space, &small_integer_grid(), 2);
    let tables: Vec<(Table, Rational)> = grid
        .iter()
        .map(|v| (Table::of(space, v), integral(space, v)))
        .collect();
    let nonneg = grid.iter().zip(&tables).try_for_each(|(v, (t, i))| {
        let nn = t.dom.elements().all(|x| !t.vals[x].is_negative());
        if nn && i.is_negative() {
            Err(json!({"v": show(v), "int v": i.to_string()}))
        } else {
            Ok(())
        }
    });
    report.record(
        "nonneg",
        false,
        format!(
            "all {} functions with at most 2 terms and coefficients in {{-2, ..., 2}}",
            grid.len()
        ),
        nonneg,
    );

    let abs = (0..500).try_for_each(|_| {
        let v = random_simple(space, &mut rng, 4);
        let lhs = integral(space, &v).abs();
        let rhs = integral(space, &abs_sf(space, &v));
        if lhs <= rhs {
            Ok(())
        } else {
            Err(json!({"v": show(&v), "|int v|": lhs.to_string(), "int |v|": rhs.to_string()}))
        }
    });
    report.record("abs", true, "|int v| <= int |v| for 500 random v", abs);

    let below = |a: &Table, b: &Table| {
        let d = a.dom.intersection(&b.dom);
        let ok = d.elements().all(|x| a.vals[x] <= b.vals[x]);
        ok
    };
    let order_fail = |v: &SimpleFunction, w: &SimpleFunction, iv: &Rational, iw: &Rational| json!({"v": show(v), "w": show(w), "int v": iv.to_string(), "int w": iw.to_string()});
    let exhaustive = space.ground().len() <= 3;
    let order = if exhaustive {
        (|| {
            for (v, (tv, iv)) in grid.iter().zip(&tables) {
                for (w, (tw, iw)) in grid.iter().zip(&tables) {
                    if iv > iw && below(tv, tw) {
                        return Err(order_fail(v, w, iv, iw));
                    }
                }
            }
            Ok(())
        })()
    } else {
        (0..config.samples * 50).try_for_each(|_| {
            let a = rng.gen_range(0..grid.len());
            let b = rng.gen_range(0..grid.len());
            let ((tv, iv), (tw, iw)) = (&tables[a], &tables[b]);
            if iv > iw && below(tv, tw) {
                Err(order_fail(&grid[a], &grid[b], iv, iw))
            } else {
                Ok(())
            }
        })
    };
    report.record(
        "order",
        !exhaustive,
        if exhaustive {
            format!(
                "all {} ordered pairs of grid functions",
                grid.len() * grid.len()
            )
        } else {
            format!("{} random pairs of grid functions", config.samples * 50)
        },
        order,
    );

    let mut tried = 0usize;
    let positive = (0..config.samples * 20).try_for_each(|_| {
        let v = random_simple(space, &mut rng, 4);
        let k = rng.gen_range(0..=3);
        let alpha: Vec<SimpleFunction> = (0..k)
            .map(|_| random_nonneg_simple(space, &mut rng, 3))
            .collect();
        let total = integral(space, &v) + total_integral(space, &alpha);
        if !total.is_positive() {
            return Ok(());
        }
        tried += 1;
        // f_v + Σ f_α > 0 iff f_v > Σ f_(−α)
        let negated: Vec<SimpleFunction> = alpha.iter().map(super::neg).collect();
        match witness(space, &v, &negated) {
            Some(_) => Ok(()),
            None => Err(json!({
                "v": show(&v),
                "alpha": alpha.iter().map(show).collect::<Vec<_>>(),
                "int v + sum int alpha": total.to_string(),
            })),
        }
    });
    report.record(
        "positive-witness",
        true,
        format!("{tried} instances with int v + sum int alpha > 0"),
        positive,
    );
    Ok(report)
}
