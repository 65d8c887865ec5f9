use cmeasure::complemented_sets::GroundSet;
use cmeasure::premeasure::{dirac, weighted_counting, Idx, PreMeasureSpace};
use cmeasure::rational::{int, ratio, Rational};
use cmeasure::report::CheckConfig;
use cmeasure::simple_functions::gen::{equal_variant, grid_functions, random_simple};
use cmeasure::simple_functions::{
    abs_sf, check_pis_simple, disjrep, domain, eval, integral, meet_one, phi_n, phi_n_bound_check,
    pis_basic_lemmas, scalar_mul, sf_equal, sf_join, sf_meet, to_partial, SimpleFunction,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn abc() -> GroundSet {
    GroundSet::new(["a", "b", "c"]).unwrap()
}

fn spaces() -> Vec<PreMeasureSpace> {
    let g = abc();
    vec![
        dirac(&g, "a").unwrap(),
        dirac(&g, "c").unwrap(),
        weighted_counting(
            &g,
            &[
                ("a".into(), int(1)),
                ("b".into(), ratio(1, 2)),
                ("c".into(), int(3)),
            ],
        )
        .unwrap(),
    ]
}

fn assert_passes(r: &cmeasure::report::Report) {
    assert!(r.passed(), "{}", serde_json::to_string_pretty(r).unwrap());
}

#[test]
fn pis_axioms_hold() {
    for s in spaces() {
        assert_passes(&check_pis_simple(&s, &CheckConfig::default()).unwrap());
    }
}

#[test]
fn phi_n_guarantees_hold() {
    for s in spaces() {
        assert_passes(&phi_n_bound_check(&s, &CheckConfig::default()).unwrap());
    }
}

#[test]
fn basic_lemmas_hold() {
    for s in spaces() {
        assert_passes(&pis_basic_lemmas(&s, &CheckConfig::default()).unwrap());
    }
}

fn ix(s: &PreMeasureSpace, bits: &str) -> Idx {
    s.index_of_label(bits).unwrap()
}

fn sf(s: &PreMeasureSpace, terms: &[(Rational, &str)]) -> SimpleFunction {
    SimpleFunction::new(terms.iter().map(|(a, b)| (a.clone(), ix(s, b))).collect())
}

fn coefficient_grid() -> Vec<Rational> {
    (-2..=2).map(int).collect()
}

#[test]
fn disjoint_representation_sweep() {
    for s in spaces() {
        let fs = grid_functions(&s, &coefficient_grid(), 3);
        assert_eq!(fs.len(), 1 + 40 + 40 * 40 + 40 * 40 * 40);
        for v in &fs {
            let d = disjrep(&s, v).unwrap();
            if v.is_empty() {
                assert!(d.terms.is_empty());
                continue;
            }
            assert_eq!(d.terms.len(), (1 << v.len()) - 1);
            assert!(sf_equal(&s, v, &d.to_simple()), "{v:?}");
            for (k, a) in d.terms.iter().enumerate() {
                for b in &d.terms[k + 1..] {
                    let (fa, fb) = (s.family(a.index), s.family(b.index));
                    let common = fa.domain().intersection(&fb.domain());
                    assert!(common.elements().all(|x| fa.chi_at(x) * fb.chi_at(x) == 0));
                }
            }
            let by_terms: Rational = d.terms.iter().map(|t| &t.coeff * s.measure(t.index)).sum();
            assert_eq!(integral(&s, v), by_terms, "{v:?}");
        }
    }
}

#[test]
fn two_term_disjoint_coefficients() {
    let s = &spaces()[2];
    let (i, j) = (ix(s, "110"), ix(s, "011"));
    let v = SimpleFunction::new(vec![(int(1), i), (int(1), j)]);
    let d = disjrep(s, &v).unwrap();
    let coeff = |profile| d.terms.iter().find(|t| t.profile == profile).unwrap();
    assert_eq!(coeff(0b11).coeff, int(2));
    assert_eq!(
        s.family(coeff(0b11).index),
        &s.family(i).meet(s.family(j)).unwrap()
    );
    assert_eq!(coeff(0b01).coeff, int(1));
    assert_eq!(
        s.family(coeff(0b01).index),
        &s.family(i).minus(s.family(j)).unwrap()
    );
    assert_eq!(coeff(0b10).coeff, int(1));
    assert_eq!(
        s.family(coeff(0b10).index),
        &s.family(j).minus(s.family(i)).unwrap()
    );
    let single = disjrep(s, &SimpleFunction::single(ratio(5, 2), i)).unwrap();
    assert_eq!(single.terms.len(), 1);
    assert_eq!(s.family(single.terms[0].index), s.family(i));
}

#[test]
fn equal_functions_have_equal_integrals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in spaces() {
        for _ in 0..500 {
            let v = random_simple(&s, &mut rng, 4);
            let mut w = v.clone();
            for _ in 0..3 {
                w = equal_variant(&s, &w, &mut rng);
            }
            assert!(sf_equal(&s, &v, &w), "{v:?} vs {w:?}");
            assert_eq!(integral(&s, &v), integral(&s, &w), "{v:?} vs {w:?}");
            assert_eq!(to_partial(&s, &v), to_partial(&s, &w));
            let (pv, pw) = (abs_sf(&s, &v), abs_sf(&s, &w));
            assert_eq!(
                phi_n(&s, &pv, 2).map(|i| s.family(i).clone()),
                phi_n(&s, &pw, 2).map(|i| s.family(i).clone())
            );
        }
    }
}

#[test]
fn order_sweep() {
    for s in spaces() {
        let fs = grid_functions(&s, &coefficient_grid(), 2);
        let n = s.ground().len();
        let table: Vec<(u64, Vec<Rational>, Rational)> = fs
            .iter()
            .map(|v| {
                let d = domain(&s, v);
                let vals = (0..n)
                    .map(|x| to_partial(&s, v).get(x).cloned().unwrap_or_default())
                    .collect();
                (d.bits(), vals, integral(&s, v))
            })
            .collect();
        let mut applied = 0usize;
        for (dv, fv, iv) in &table {
            for (dw, fw, iw) in &table {
                let common = dv & dw;
                let below = (0..n)
                    .filter(|x| common >> x & 1 == 1)
                    .all(|x| fv[x] <= fw[x]);
                if below {
                    applied += 1;
                    assert!(iv <= iw);
                }
            }
        }
        assert!(applied > fs.len());
    }
}

#[test]
fn evaluation_examples() {
    let s = dirac(&abc(), "a").unwrap();
    assert_eq!(eval(&s, &SimpleFunction::zero(), 1).unwrap(), int(0));
    let v = sf(&s, &[(int(2), "100"), (int(3), "010")]);
    assert_eq!(eval(&s, &v, 0).unwrap(), int(2));
    assert_eq!(integral(&s, &v), int(2));
    assert_eq!(
        integral(&s, &sf(&s, &[(int(0), "111"), (int(0), "100")])),
        int(0)
    );
    assert!(sf_equal(
        &s,
        &sf(&s, &[(int(1), "101"), (int(1), "101")]),
        &sf(&s, &[(int(2), "101")])
    ));
    assert!(!sf_equal(
        &s,
        &sf(&s, &[(int(1), "101")]),
        &sf(&s, &[(int(1), "011")])
    ));
}

#[test]
fn operation_examples() {
    let s = dirac(&abc(), "b").unwrap();
    let i = "110";
    let v = sf(&s, &[(ratio(7, 3), i), (int(-1), "011")]);
    let zero = scalar_mul(&int(0), &v);
    assert!(sf_equal(
        &s,
        &zero,
        &SimpleFunction::single(int(0), ix(&s, "000"))
    ));
    let a = abs_sf(&s, &sf(&s, &[(int(-2), i)]));
    assert_eq!(eval(&s, &a, 0).unwrap(), int(2));
    assert_eq!(eval(&s, &a, 2).unwrap(), int(0));
    let m = meet_one(&s, &sf(&s, &[(int(3), i)]));
    assert_eq!(eval(&s, &m, 0).unwrap(), int(1));
    assert_eq!(eval(&s, &m, 1).unwrap(), int(1));
    assert_eq!(eval(&s, &m, 2).unwrap(), int(0));
    assert!(sf_equal(&s, &sf_join(&s, &v, &v), &v));
    assert!(sf_equal(&s, &sf_meet(&s, &v, &v), &v));
    let (one, two) = (sf(&s, &[(int(1), "111")]), sf(&s, &[(int(2), "111")]));
    assert!(sf_equal(&s, &sf_join(&s, &one, &two), &two));
    assert!(sf_equal(&s, &sf_meet(&s, &one, &two), &one));
}

#[test]
fn lattice_operations_are_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in spaces() {
        for _ in 0..200 {
            let v = random_simple(&s, &mut rng, 3);
            let w = random_simple(&s, &mut rng, 3);
            let (j, m) = (sf_join(&s, &v, &w), sf_meet(&s, &v, &w));
            let common = domain(&s, &v).intersection(&domain(&s, &w));
            for x in common.elements() {
                let (a, b) = (eval(&s, &v, x).unwrap(), eval(&s, &w, x).unwrap());
                assert_eq!(eval(&s, &j, x).unwrap(), a.clone().max(b.clone()));
                assert_eq!(eval(&s, &m, x).unwrap(), a.min(b));
            }
        }
    }
}

#[test]
fn phi_n_examples() {
    let s = dirac(&abc(), "a").unwrap();
    let null = phi_n(&s, &SimpleFunction::zero(), 1).unwrap();
    assert!(s.family(null).pos().is_empty());
    assert!(s.measure(null).is_zero());

    let v = sf(&s, &[(int(1), "110")]);
    let r = phi_n(&s, &v, 1).unwrap();
    assert_eq!(s.family(r).pos(), s.family(ix(&s, "110")).pos());
    for x in s.family(r).neg().elements() {
        assert!(eval(&s, &v, x).unwrap() < int(1));
    }

    // a coefficient of exactly 1/N is not small but is large
    let edge = sf(&s, &[(ratio(1, 2), "100")]);
    let r = phi_n(&s, &edge, 2).unwrap();
    assert_eq!(s.family(r).pos(), s.family(ix(&s, "100")).pos());
    assert!(s.measure(r) <= &(int(4) * integral(&s, &edge)));
    assert!(phi_n(&s, &sf(&s, &[(int(-1), "100")]), 1).is_err());
    assert!(phi_n(&s, &edge, 0).is_err());
}

#[test]
fn pis2_edge_case_witness() {
    let s = dirac(&abc(), "a").unwrap();
    let v = sf(&s, &[(int(1), "111")]);
    let half = scalar_mul(&ratio(1, 2), &v);
    assert!(integral(&s, &half) < integral(&s, &v));
    let x0 = 0;
    assert!(eval(&s, &half, x0).unwrap() < eval(&s, &v, x0).unwrap());
}
