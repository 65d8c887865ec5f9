//! Checker for the pre-integration space axioms on `I₁` and the properties
//! of the norm, compression and Lebesgue sums.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gen::{random_finite_rep, random_nonneg_finite_rep};
use super::{
    abs_series, compress, eq_int, eval_rep, integral_rep, lebesgue_modulus, lebesgue_sum,
    limit_of_cauchy, norm1, rep_abs, rep_add, rep_concat, rep_meet_one, rep_scale, rep_sub, IntEq,
    PointwiseTail, RepStream, Representation,
};
use crate::complemented_sets::Subset;
use crate::modulated_reals::{ModulatedReal, Modulus};
use crate::premeasure::{ensure_size, PreMeasureSpace};
use crate::rational::{int, log2_ceil_abs, pow2_neg, ratio, Rational};
use crate::report::{CheckConfig, CheckError, Report};
use crate::simple_functions::gen::{grid_functions, random_rational, random_simple};
use crate::simple_functions::{abs_sf, disjrep, domain, integral, raw_value, SimpleFunction};

/// `ν₀` and the values of `g` on it, for finite support.
struct Values {
    dom: Subset,
    vals: Vec<Rational>,
}

fn values(alpha: &Representation) -> Values {
    let dom = alpha.finite_domain().expect("finite support");
    let vals = (0..alpha.space().ground().len())
        .map(|x| {
            if dom.contains(x) {
                exact(&eval_rep(alpha, x).expect("x is in the domain"))
            } else {
                Rational::zero()
            }
        })
        .collect();
    Values { dom, vals }
}

fn exact(x: &ModulatedReal) -> Rational {
    x.as_exact()
        .expect("finite support gives exact values")
        .clone()
}

fn show(alpha: &Representation) -> String {
    format!("{alpha:?}")
}

fn agrees(
    got: &Representation,
    dom: &Subset,
    want: impl Fn(usize) -> Rational,
) -> Result<(), Value> {
    let g = values(got);
    if g.dom != *dom {
        return Err(json!({"domain": g.dom.to_string(), "expected domain": dom.to_string()}));
    }
    match dom.elements().find(|&x| g.vals[x] != want(x)) {
        None => Ok(()),
        Some(x) => Err(json!({
            "x": got.space().ground().label(x),
            "value": g.vals[x].to_string(),
            "expected": want(x).to_string(),
        })),
    }
}

fn pis1_instance(
    a: &Rational,
    b: &Rational,
    alpha: &Representation,
    beta: &Representation,
) -> Result<(), Value> {
    let (va, vb) = (values(alpha), values(beta));
    let ctx = |what: &str, e: Value| json!({"identity": what, "a": a.to_string(), "alpha": show(alpha), "beta": show(beta), "mismatch": e});
    agrees(&rep_scale(a, alpha), &va.dom, |x| a * &va.vals[x])
        .map_err(|e| ctx("g(a alpha) = a g(alpha)", e))?;
    let both = va.dom.intersection(&vb.dom);
    agrees(&rep_add(alpha, beta), &both, |x| &va.vals[x] + &vb.vals[x])
        .map_err(|e| ctx("g(alpha + beta) = g(alpha) + g(beta)", e))?;
    agrees(&rep_abs(alpha), &va.dom, |x| va.vals[x].abs())
        .map_err(|e| ctx("g(|alpha|) = |g(alpha)|", e))?;
    agrees(&rep_meet_one(alpha), &va.dom, |x| {
        va.vals[x].clone().min(Rational::one())
    })
    .map_err(|e| ctx("g(alpha ^ 1) = g(alpha) ^ 1", e))?;
    let lhs = exact(&integral_rep(&rep_add(
        &rep_scale(a, alpha),
        &rep_scale(b, beta),
    )));
    let rhs = a * exact(&integral_rep(alpha)) + b * exact(&integral_rep(beta));
    if lhs != rhs {
        return Err(ctx(
            "int(a alpha + b beta) = a int(alpha) + b int(beta)",
            json!({"b": b.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()}),
        ));
    }
    Ok(())
}

/// `α∧m = m·∧₁(m⁻¹·α)`.
fn cap(alpha: &Representation, m: &Rational) -> Representation {
    rep_scale(m, &rep_meet_one(&rep_scale(&m.recip(), alpha)))
}

/// `|α|∧m⁻¹ = m⁻¹·∧₁(m·|α|)`.
fn floor_cap(alpha: &Representation, m: &Rational) -> Representation {
    rep_scale(&m.recip(), &rep_meet_one(&rep_scale(m, &rep_abs(alpha))))
}

fn pis4_finite(alpha: &Representation) -> Result<(), Value> {
    let space = alpha.space();
    let s = alpha.prefix_sum(alpha.support().unwrap_or(0));
    let va = values(alpha);
    let top = va
        .dom
        .elements()
        .map(|x| va.vals[x].abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let total = exact(&integral_rep(alpha));
    let d = disjrep(space, &s).map_err(|e| json!({"error": e.to_string()}))?;
    let c: Rational = d
        .terms
        .iter()
        .filter(|t| !t.coeff.is_zero())
        .map(|t| space.measure(t.index).clone())
        .sum();
    for m in 1..=64i64 {
        let mq = int(m);
        let im = exact(&integral_rep(&cap(alpha, &mq)));
        let want: Rational = d
            .terms
            .iter()
            .map(|t| t.coeff.clone().min(mq.clone()) * space.measure(t.index))
            .sum();
        if im != want {
            return Err(
                json!({"alpha": show(alpha), "m": m, "int alpha^m": im.to_string(), "expected": want.to_string()}),
            );
        }
        if mq > top && im != total {
            return Err(
                json!({"alpha": show(alpha), "m": m, "reason": "int alpha^m has not reached int alpha"}),
            );
        }
        let ib = exact(&integral_rep(&floor_cap(alpha, &mq)));
        let inv = mq.recip();
        let want: Rational = d
            .terms
            .iter()
            .map(|t| t.coeff.abs().min(inv.clone()) * space.measure(t.index))
            .sum();
        if ib != want || ib > &c * &inv {
            return Err(json!({
                "alpha": show(alpha), "m": m, "int |alpha|^(1/m)": ib.to_string(),
                "expected": want.to_string(), "C/m": (&c * &inv).to_string(),
            }));
        }
    }
    Ok(())
}

/// Finitely supported `α`: `‖α − Σ_{n<=N} h(α(n))‖₁` is 0 once `N` covers
/// the support and at most `Σ_{n>N} ∫|α(n)|` before; and `α` is at distance
/// 0 from the embedding of its total.
fn corollary_and_density(alpha: &Representation) -> Result<(), Value> {
    let space = alpha.space();
    let s = alpha.support().unwrap_or(0);
    for n in 0..=s + 1 {
        let head: Vec<Representation> = (1..=n)
            .map(|k| Representation::embed(space, &alpha.term(k)))
            .chain([Representation::zero(space)])
            .collect();
        let partial = rep_concat(&head).expect("finite blocks");
        let dist = exact(&norm1(&rep_sub(alpha, &partial)));
        let rest: Rational = (n + 1..=s)
            .map(|k| integral(space, &abs_sf(space, &alpha.term(k))))
            .sum();
        if (n >= s && !dist.is_zero()) || dist > rest {
            return Err(
                json!({"alpha": show(alpha), "N": n, "distance": dist.to_string(), "tail": rest.to_string()}),
            );
        }
    }
    let total = Representation::embed(space, &alpha.prefix_sum(s));
    match eq_int(alpha, &total, 0) {
        IntEq::Equal { exact: true } => Ok(()),
        other => Err(
            json!({"alpha": show(alpha), "reason": "not at distance 0 from h(sum)", "eq": format!("{other:?}")}),
        ),
    }
}

fn compress_finite(alpha: &Representation, n: u32) -> Result<(), Value> {
    let b = compress(alpha, n);
    let va = values(alpha);
    agrees(&b, &va.dom, |x| va.vals[x].clone())
        .map_err(|e| json!({"alpha": show(alpha), "n": n, "mismatch": e}))?;
    let (ia, ib) = (exact(&integral_rep(alpha)), exact(&integral_rep(&b)));
    let (mass, norm) = (exact(&abs_series(&b)), exact(&norm1(alpha)));
    if ia != ib || mass > norm.clone() + pow2_neg(n) {
        return Err(json!({
            "alpha": show(alpha), "n": n, "int alpha": ia.to_string(), "int beta": ib.to_string(),
            "sum int |beta(k)|": mass.to_string(), "norm": norm.to_string(),
        }));
    }
    Ok(())
}

/// A simple function with positive `∫|v|`, favouring the full index.
fn geometric_base(space: &PreMeasureSpace, rng: &mut impl Rng) -> SimpleFunction {
    loop {
        let v = random_simple(space, rng, 2);
        if integral(space, &abs_sf(space, &v)).is_positive() {
            return v;
        }
    }
}

/// Checks on one geometric representation `α(n) = 2^-n·v` at precision `p`.
fn geometric_checks(space: &PreMeasureSpace, v: &SimpleFunction, p: u32) -> Result<(), Value> {
    let half = ratio(1, 2);
    let alpha = Representation::geometric(space, v, &half).expect("ratio 1/2");
    let fail =
        |what: &str, detail: Value| json!({"v": format!("{v:?}"), "check": what, "detail": detail});
    let iv = integral(space, v);
    let mass = integral(space, &abs_sf(space, v));
    let ia = integral_rep(&alpha);
    if !ia.eq_at(&ModulatedReal::from_rational(iv.clone()), p) {
        return Err(fail(
            "int alpha = int v",
            json!({"approx": ia.approx_to(p).to_string(), "int v": iv.to_string()}),
        ));
    }
    alpha
        .check_tail(p.min(12), 16)
        .map_err(|e| fail("tail certificate", json!(e.to_string())))?;
    for x in domain(space, v).elements() {
        let g = eval_rep(&alpha, x).map_err(|e| fail("eval", json!(e.to_string())))?;
        if !g.eq_at(&ModulatedReal::from_rational(raw_value(space, v, x)), p) {
            return Err(fail("g(x) = f_v(x)", json!({"x": space.ground().label(x)})));
        }
    }
    let norm = norm1(&alpha);
    if !ia.abs().le_at(&norm, p) || !norm.eq_at(&ModulatedReal::from_rational(mass.clone()), p) {
        return Err(fail(
            "|int alpha| <= norm = int |v|",
            json!({"norm": norm.approx_to(p).to_string()}),
        ));
    }
    // the two estimates behind PIS4
    let top: Rational = domain(space, v)
        .elements()
        .map(|x| raw_value(space, v, x).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let m = top.ceil() + Rational::one();
    if !integral_rep(&cap(&alpha, &m)).eq_at(&ia, p) {
        return Err(fail(
            "int alpha^m = int alpha for m > max |g|",
            json!({"m": m.to_string()}),
        ));
    }
    for k in [1i64, 4, 16, 64] {
        let mq = int(k);
        let bound =
            ModulatedReal::from_rational(mass.clone().min(space.measure(full_or_any(space)) / &mq));
        let small = integral_rep(&floor_cap(&alpha, &mq));
        if !small.le_at(&bound, p) {
            return Err(fail("int |alpha|^(1/m) <= mu(X)/m", json!({"m": k})));
        }
    }
    // compression
    for n in [0u32, 2, 5] {
        let b = compress(&alpha, n);
        let ok = integral_rep(&b).eq_at(&ia, p)
            && abs_series(&b).le_at(&norm.add(&ModulatedReal::from_rational(pow2_neg(n))), p);
        if !ok {
            return Err(fail("compress", json!({"n": n})));
        }
    }
    // corollary and density
    for n in [0u64, 1, 3, 6] {
        let head: Vec<Representation> = (1..=n)
            .map(|k| Representation::embed(space, &alpha.term(k)))
            .chain([Representation::zero(space)])
            .collect();
        let dist = norm1(&rep_sub(&alpha, &rep_concat(&head).expect("finite")));
        let rest = &mass * pow2_neg(n as u32);
        if !dist.le_at(&ModulatedReal::from_rational(rest.clone()), p) {
            return Err(fail(
                "corollary",
                json!({"N": n, "bound": rest.to_string()}),
            ));
        }
    }
    let near = Representation::embed(space, &alpha.prefix_sum(alpha.tail(p + 1)));
    if !norm1(&rep_sub(&alpha, &near)).le_at(&ModulatedReal::from_rational(pow2_neg(p)), p + 1) {
        return Err(fail("density", json!({"p": p})));
    }
    Ok(())
}

/// The index with the largest positive part, whose measure bounds every
/// other measure in the shipped spaces.
fn full_or_any(space: &PreMeasureSpace) -> crate::premeasure::Idx {
    space
        .indices()
        .max_by_key(|&i| space.family(i).pos().len())
        .expect("nonempty index set")
}

/// `Γ(n) = h(2^-n·v)`: the Lebesgue sum evaluates to `f_v`, its distance
/// to `Σ_{n<=N} Γ(n)` is at most `2^-N·(∫|v| + 1)`, and the limit of
/// `h((1 − 2^-n)·v)` is at distance 0 from `h(v)`.
fn lebesgue_checks(space: &PreMeasureSpace, v: &SimpleFunction, p: u32) -> Result<(), Value> {
    let fail =
        |what: &str, detail: Value| json!({"v": format!("{v:?}"), "check": what, "detail": detail});
    let mass = integral(space, &abs_sf(space, v));
    let k = log2_ceil_abs(&mass);
    let base = v.clone();
    let sp = space.clone();
    let gamma: RepStream = Arc::new(move |n| {
        Representation::embed(
            &sp,
            &crate::simple_functions::scalar_mul(&pow2_neg(n as u32), &base),
        )
    });
    let heights: Vec<u32> = (0..space.ground().len())
        .map(|x| log2_ceil_abs(&raw_value(space, v, x)))
        .collect();
    let pointwise = PointwiseTail {
        domain: domain(space, v),
        tail: Arc::new(move |x, q| q as u64 + heights[x] as u64),
    };
    let outer = Modulus::new(move |q| q as u64 + k as u64);
    let alpha = lebesgue_sum(space, gamma.clone(), outer.clone(), Some(pointwise));
    for x in domain(space, v).elements() {
        let g = eval_rep(&alpha, x).map_err(|e| fail("eval", json!(e.to_string())))?;
        if !g.eq_at(&ModulatedReal::from_rational(raw_value(space, v, x)), p) {
            return Err(fail(
                "g(x) = f_v(x)",
                json!({"x": space.ground().label(x), "approx": g.approx_to(p).to_string()}),
            ));
        }
    }
    if !integral_rep(&alpha).eq_at(&ModulatedReal::from_rational(integral(space, v)), p) {
        return Err(fail("int alpha = int v", json!({})));
    }
    let m_prime = lebesgue_modulus(&outer);
    for n in 1..=12u64 {
        let head: Vec<Representation> = (1..=n)
            .map(|j| gamma(j))
            .chain([Representation::zero(space)])
            .collect();
        let dist = norm1(&rep_sub(&alpha, &rep_concat(&head).expect("finite")));
        let bound = (&mass + Rational::one()) * pow2_neg(n as u32);
        if !dist.le_at(&ModulatedReal::from_rational(bound.clone()), p) {
            return Err(fail(
                "distance to partial sums",
                json!({"N": n, "bound": bound.to_string()}),
            ));
        }
        if n >= m_prime.at(4) && !dist.le_at(&ModulatedReal::from_rational(pow2_neg(4)), p) {
            return Err(fail("modulus M'", json!({"N": n})));
        }
    }
    let sp = space.clone();
    let target = v.clone();
    let seq: RepStream = Arc::new(move |n| {
        let c = Rational::one() - pow2_neg(n as u32);
        Representation::embed(&sp, &crate::simple_functions::scalar_mul(&c, &target))
    });
    let (limit, m2) = limit_of_cauchy(
        space,
        seq.clone(),
        Modulus::new(move |q| q as u64 + k as u64 + 1),
    );
    let whole = Representation::embed(space, v);
    let q = p;
    if eq_int(&limit, &whole, q) == IntEq::Distinct {
        return Err(fail("limit of h((1 - 2^-n) v) = h(v)", json!({"p": q})));
    }
    for r in [2u32, 6, p] {
        let m = m2.at(r);
        let dist = norm1(&rep_sub(&limit, &seq(m)));
        if !dist.le_at(&ModulatedReal::from_rational(pow2_neg(r)), q) {
            return Err(fail("modulus M''", json!({"p": r, "m": m})));
        }
    }
    Ok(())
}

/// The axioms PIS1–PIS4 for `I₁` over `space` with the consequences used
/// along the way. Finitely supported representations are checked exactly;
/// geometric and Lebesgue-sum representations at `config.precision`.
pub fn check_pis_completion(
    space: &PreMeasureSpace,
    config: &CheckConfig,
) -> Result<Report, CheckError> {
    ensure_size(space, config)?;
    let mut report = Report::new("pis-complete");
    report.note(format!("space: {}", space.description()));
    report.note(format!(
        "infinite representations are compared at precision 2^-{}",
        config.precision
    ));
    let p = config.precision;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.samples;

    let grid: Vec<Representation> = grid_functions(space, &[int(-1), int(2)], 1)
        .iter()
        .map(|v| Representation::embed(space, v))
        .collect();
    let scalars = [int(-2), ratio(1, 2), int(3)];
    let exhaustive = (|| {
        for a in &grid {
            for b in &grid {
                for s in &scalars {
                    pis1_instance(s, &int(-1), a, b)?;
                }
            }
        }
        Ok(())
    })();
    report.record(
        "PIS1.embedded",
        false,
        format!(
            "{} embedded one-term functions squared, a in {{-2, 1/2, 3}}",
            grid.len()
        ),
        exhaustive,
    );
    let sampled = (0..n).try_for_each(|_| {
        let alpha = random_finite_rep(space, &mut rng, 3);
        let beta = random_finite_rep(space, &mut rng, 3);
        pis1_instance(
            &random_rational(&mut rng),
            &random_rational(&mut rng),
            &alpha,
            &beta,
        )
    });
    report.record(
        "PIS1.sampled",
        true,
        format!("{n} pairs of finitely supported representations"),
        sampled,
    );

    let ratios = [ratio(1, 2), ratio(3, 4), ratio(99, 100)];
    let mut instances = 0usize;
    let mut attempts = 0usize;
    let mut pis2 = Ok(());
    while pis2.is_ok() && instances < n.max(1) && attempts < 50 * n.max(1) {
        attempts += 1;
        let alpha = random_finite_rep(space, &mut rng, 3);
        let ia = exact(&integral_rep(&alpha));
        if !ia.is_positive() {
            continue;
        }
        let k = rng.gen_range(0..=3);
        let gamma: Vec<Representation> = (0..k)
            .map(|_| random_nonneg_finite_rep(space, &mut rng, 2))
            .collect();
        let total: Rational = gamma.iter().map(|g| exact(&integral_rep(g))).sum();
        let r = &ratios[rng.gen_range(0..ratios.len())];
        let gamma: Vec<Representation> = if total.is_zero() {
            gamma
        } else {
            let t = &ia * r / &total;
            gamma.iter().map(|g| rep_scale(&t, g)).collect()
        };
        instances += 1;
        let dom = gamma
            .iter()
            .map(|g| g.finite_domain().expect("finite"))
            .fold(alpha.finite_domain().expect("finite"), |a, b| {
                a.intersection(&b)
            });
        let va = values(&alpha);
        let vg: Vec<Values> = gamma.iter().map(values).collect();
        let found = dom.elements().any(|x| {
            let s: Rational = vg.iter().map(|g| g.vals[x].clone()).sum();
            s < va.vals[x]
        });
        if !found {
            pis2 = Err(json!({
                "alpha": show(&alpha),
                "gamma": gamma.iter().map(show).collect::<Vec<_>>(),
            }));
        }
    }
    report.record(
        "PIS2",
        true,
        format!("{instances} finitely supported instances with sum int Gamma < int alpha"),
        pis2,
    );

    let pis3 = space
        .indices()
        .find(|&i| space.measure(i).is_positive())
        .map(|i| {
            let v = SimpleFunction::single(space.measure(i).recip(), i);
            exact(&integral_rep(&Representation::embed(space, &v)))
        });
    match pis3 {
        Some(one) if one == Rational::one() => report.pass("PIS3", "int h((1/mu(i), i)) = 1"),
        other => report.fail(
            "PIS3",
            "no embedded witness integrates to 1",
            json!({"value": other.map(|q| q.to_string())}),
        ),
    }

    let pis4 = (0..n / 4 + 1).try_for_each(|_| pis4_finite(&random_finite_rep(space, &mut rng, 3)));
    report.record(
        "PIS4.finite",
        true,
        format!(
            "{} finitely supported representations, m = 1..=64, exact",
            n / 4 + 1
        ),
        pis4,
    );

    let lemma_grid: Vec<Representation> = {
        let ones = grid_functions(space, &[int(-1), int(1)], 1);
        let mut out = Vec::new();
        for a in &ones {
            for b in &ones {
                out.push(Representation::finite(space, vec![a.clone(), b.clone()]));
            }
        }
        out
    };
    let nonneg = lemma_grid.iter().try_for_each(|alpha| {
        let va = values(alpha);
        let nn = va.dom.elements().all(|x| !va.vals[x].is_negative());
        let ia = exact(&integral_rep(alpha));
        if nn && ia.is_negative() {
            Err(json!({"alpha": show(alpha), "int": ia.to_string()}))
        } else {
            Ok(())
        }
    });
    report.record(
        "nonneg",
        false,
        format!(
            "g >= 0 implies int >= 0 over all {} two-term representations from {{-1, 1}} x I",
            lemma_grid.len()
        ),
        nonneg,
    );
    let order = (0..n * 5).try_for_each(|_| {
        let a = &lemma_grid[rng.gen_range(0..lemma_grid.len())];
        let b = &lemma_grid[rng.gen_range(0..lemma_grid.len())];
        let (va, vb) = (values(a), values(b));
        let below = va
            .dom
            .intersection(&vb.dom)
            .elements()
            .all(|x| va.vals[x] <= vb.vals[x]);
        let (ia, ib) = (exact(&integral_rep(a)), exact(&integral_rep(b)));
        if below && ia > ib {
            Err(json!({"alpha": show(a), "beta": show(b)}))
        } else {
            Ok(())
        }
    });
    report.record(
        "order",
        true,
        format!(
            "{} sampled pairs: g(alpha) <= g(beta) implies int alpha <= int beta",
            n * 5
        ),
        order,
    );

    let norms = (0..n).try_for_each(|_| {
        let alpha = random_finite_rep(space, &mut rng, 3);
        let beta = random_finite_rep(space, &mut rng, 3);
        let a = random_rational(&mut rng);
        let na = exact(&norm1(&alpha));
        let nb = exact(&norm1(&beta));
        let nsum = exact(&norm1(&rep_add(&alpha, &beta)));
        let nscaled = exact(&norm1(&rep_scale(&a, &alpha)));
        let zero = Representation::zero(space);
        let is_zero = matches!(eq_int(&alpha, &zero, 0), IntEq::Equal { exact: true });
        let ia = exact(&integral_rep(&alpha));
        let err = |what: &str| Err(json!({"law": what, "alpha": show(&alpha), "beta": show(&beta), "a": a.to_string()}));
        if na.is_negative() {
            return err("norm >= 0");
        }
        if is_zero != na.is_zero() {
            return err("norm = 0 iff alpha =_int 0");
        }
        if nscaled != a.abs() * &na {
            return err("norm(a alpha) = |a| norm(alpha)");
        }
        if nsum > &na + &nb {
            return err("triangle inequality");
        }
        if ia.abs() > na {
            return err("|int alpha| <= int |alpha|");
        }
        Ok(())
    });
    report.record(
        "norm",
        true,
        format!("{n} finitely supported pairs, exact"),
        norms,
    );

    let compression = (0..n / 4 + 1).try_for_each(|_| {
        let alpha = random_finite_rep(space, &mut rng, 4);
        [0u32, 1, 3, 8]
            .iter()
            .try_for_each(|&k| compress_finite(&alpha, k))
    });
    report.record(
        "compress",
        true,
        "compress preserves domain, values and integral; mass bound with slack 2^-n",
        compression,
    );

    let corollary = (0..n / 4 + 1)
        .try_for_each(|_| corollary_and_density(&random_finite_rep(space, &mut rng, 4)));
    report.record(
        "corollary",
        true,
        "norm(alpha - sum_{n<=N} h(alpha(n))) is 0 once N covers the support; alpha =_int h(its total)",
        corollary,
    );

    let geometric =
        (0..3).try_for_each(|_| geometric_checks(space, &geometric_base(space, &mut rng), p));
    report.record(
        "geometric",
        true,
        format!("3 geometric representations at precision 2^-{p}: integral, values, norm, PIS4 estimates, compression, corollary, density"),
        geometric,
    );

    let lebesgue = lebesgue_checks(space, &geometric_base(space, &mut rng), p);
    report.record(
        "lebesgue",
        true,
        format!("Lebesgue sum of h(2^-n v) and limit of h((1 - 2^-n) v) at precision 2^-{p}"),
        lebesgue,
    );
    Ok(report)
}
