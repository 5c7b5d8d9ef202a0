use gordian::algebra::{CycloElement, IntMatrix};
use gordian::braid::BraidWord;
use gordian::catalog::bundled_catalog;
use gordian::diagram::seifert_matrix;
use gordian::invariants::*;
use gordian::knots::{named_matrix, NAMES};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn two() -> CycloElement {
    CycloElement::integer(3, 2)
}

fn m(name: &str) -> IntMatrix {
    named_matrix(name).unwrap()
}

#[test]
fn three_fold_covers() {
    let module = |n: &str| branched_homology(&m(n), 3).unwrap().module.unwrap().module_string();
    assert_eq!(module("K11n183"), "(R3/(4))^2");
    assert_eq!(module("T23#2"), "(R3/(2))^2");
    assert_eq!(module("T25"), "0");
    assert_eq!(module("K10n14"), "R3/(5)");
    let n = |k: &str| n_pqe(&m(k), 3, &two(), 2).unwrap();
    assert_eq!((n("K11n183"), n("T23#2"), n("T25")), (2, 0, 0));
    for other in ["T25", "T23#2", "K10n14"] {
        assert_eq!(gordian_lower_bound(&m("K11n183"), &m(other), 3, &two(), 2).unwrap(), 2);
    }
    assert_eq!(gordian_lower_bound(&m("K11n183"), &m("K11n183"), 3, &two(), 2).unwrap(), 0);
    assert_eq!(n_pqe(&m("unknot"), 3, &two(), 1).unwrap(), 0);
}

#[test]
fn wendt_examples() {
    assert_eq!(branched_homology(&m("K11n183"), 3).unwrap().dim_mod(2), 4);
    assert_eq!(branched_homology(&m("T25"), 3).unwrap().dim_mod(2), 0);
    assert_eq!(wendt_bound(&m("K11n183"), &m("T25"), 3, 2).unwrap(), 2.into());
    assert_eq!(wendt_bound(&m("trefoil"), &m("unknot"), 2, 3).unwrap(), 1.into());
    assert_eq!(wendt_bound(&m("K11n183"), &m("K11n183"), 3, 2).unwrap(), 0.into());
}

#[test]
fn alexander_and_signature_examples() {
    assert_eq!(alexander(&m("trefoil")).unwrap().to_string(), "t^-1 - 1 + t");
    assert_eq!(alexander(&trefoil_plumbing_matrix(0, 1)).unwrap(), delta_d(1));
    assert_eq!(delta_d(1).to_string(), "t^-2 - t^-1 + 1 - t + t^2");
    assert_eq!(signature(&m("trefoil")), -2);
    assert_eq!(signature(&m("unknot")), 0);
    assert_eq!(signature(&m("D1")), -10);
    assert_eq!(lt_signature(&m("unknot"), PLUMBING_THETA).unwrap(), 0);
    // Δ_7 is negative at e^{0.11πi}
    let v: f64 = delta_d(7)
        .terms()
        .map(|(k, c)| c.to_string().parse::<f64>().unwrap() * (k as f64 * PLUMBING_THETA).cos())
        .sum();
    assert!(v < 0.0);
}

#[test]
fn plumbing_sweep() {
    let mut seen = std::collections::BTreeMap::new();
    for a in -20i64..=20 {
        for b in -20i64..=20 {
            if (a, b) != (0, 0) && a.gcd(&b) != 1 {
                assert!(two_trefoil_report(a, b).is_err());
                continue;
            }
            let r = two_trefoil_report(a, b).unwrap();
            let d = (a * a + a * b + b * b) as u64;
            assert_eq!(r.d, d);
            assert_eq!(alexander(&trefoil_plumbing_matrix(a, b)).unwrap(), delta_d(d), "({}, {})", a, b);
            let want = match d {
                0 => PlumbingTag::TrefoilSum,
                1 => PlumbingTag::T25,
                3 => PlumbingTag::K10n14,
                _ => {
                    assert!(d >= 7);
                    PlumbingTag::SignatureMinusTwo
                }
            };
            assert_eq!(r.tag, want);
            if d >= 7 {
                assert_eq!(r.lt_signature, -2, "({}, {})", a, b);
                assert!(r.min_abs_eigenvalue > r.margin && r.margin > 0.0);
                assert!(r.det_sign_agrees);
            }
            seen.entry(d).or_insert_with(Vec::new).push((a, b));
        }
    }
    let mut three = seen[&3].clone();
    three.sort();
    assert_eq!(three, vec![(-2, 1), (-1, -1), (-1, 2), (1, -2), (1, 1), (2, -1)]);
    assert_eq!(seen[&0], vec![(0, 0)]);
    assert_eq!(seen[&1].len(), 6);
}

fn double_cover_order(v: &IntMatrix) -> Option<BigInt> {
    branched_homology(v, 2).unwrap().abelianization.order()
}

fn check_determinant_identity(v: &IntMatrix) {
    let delta = alexander(v).unwrap();
    let at_minus_one = delta.eval_int(-1);
    assert!(at_minus_one.is_integer());
    let d = at_minus_one.to_integer().abs();
    assert_eq!(determinant(v), d);
    assert_eq!(double_cover_order(v), Some(d));
}

fn unit_skew(v: &IntMatrix) -> bool {
    (v - &v.transpose()).det().is_one()
}

#[test]
fn corpus_identities() {
    for name in NAMES {
        let v = m(name);
        assert!(unit_skew(&v), "{}", name);
        check_determinant_identity(&v);
        let d = alexander(&v).unwrap();
        assert!(d.is_symmetric());
        assert_eq!(d.eval_one(), BigInt::one());
    }
    for e in bundled_catalog() {
        for v in e.matrix.iter().cloned().chain(e.pd.iter().map(|d| seifert_matrix(d).unwrap())) {
            assert!(unit_skew(&v), "{}", e.name);
            check_determinant_identity(&v);
        }
    }
    for n in 1..=3 {
        let d = gordian::family::build_family_diagram(&gordian::family::bundled_tangle(), n);
        let v = seifert_matrix(&d).unwrap();
        assert!(unit_skew(&v));
        assert_eq!(determinant(&v), double_cover_order(&v).unwrap());
    }
    for a in -3..=3 {
        for b in -3..=3 {
            assert!(unit_skew(&trefoil_plumbing_matrix(a, b)));
        }
    }
}

fn seifert_like() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3).prop_flat_map(|g| {
        let n = 2 * g;
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |x| {
            let mut v = IntMatrix::zeros(n, n);
            for k in 0..g {
                v.set(2 * k, 2 * k + 1, 1.into());
            }
            for i in 0..n {
                for j in 0..=i {
                    if !(j + 1 == i && j % 2 == 0) {
                        v.set(i, j, x[i * n + j].into());
                    }
                    if i != j {
                        let s = v.get(i, j).clone();
                        let t = v.get(j, i) + &s;
                        v.set(j, i, t);
                    }
                }
            }
            v
        })
    })
}

fn model() -> impl Strategy<Value = (IntMatrix, Vec<i64>, Vec<i64>, i64)> {
    seifert_like().prop_flat_map(|b| {
        let n = b.rows();
        (Just(b), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-3i64..=3, n), -3i64..=3)
    })
}

fn knot_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 1..=14)
            .prop_map(move |l| BraidWord::new(n, l.into_iter().map(|(g, s)| if s { g } else { -g }).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, max_global_rejects: 20_000, ..ProptestConfig::default() })]

    #[test]
    fn n_pqe_moves_by_at_most_one((b, v, w, x) in model(), eps in prop::sample::select(vec![-1i64, 1]), e in 1u32..=3) {
        let c = crossing_change_model(&b, &v, &w, x, eps).unwrap();
        let bt = cancel_corner(&c);
        prop_assert!(unit_skew(&c) && unit_skew(&bt));
        // B̃ is S-equivalent to B
        prop_assert_eq!(alexander(&bt).unwrap(), alexander(&b).unwrap());
        for q in [two(), CycloElement::from_i64(3, &[1, -1])] {
            let nb = n_pqe(&b, 3, &q, e).unwrap();
            prop_assert_eq!(n_pqe(&bt, 3, &q, e).unwrap(), nb);
            let nc = n_pqe(&c, 3, &q, e).unwrap();
            prop_assert!(nb.abs_diff(nc) <= 1, "q={} e={}: {} vs {}", q, e, nb, nc);
        }
    }

    #[test]
    fn lt_signature_does_not_decrease((b, v, w, x) in model()) {
        // with this orientation convention a positive-to-negative change adds +1 in the corner
        let c = crossing_change_model(&b, &v, &w, x, 1).unwrap();
        let bt = cancel_corner(&c);
        let (sc, sb) = (lt_signature(&c, PLUMBING_THETA), lt_signature(&bt, PLUMBING_THETA));
        prop_assume!(sc.is_ok() && sb.is_ok());
        prop_assert!(sc.unwrap() >= sb.unwrap());
    }

    #[test]
    fn diagram_crossing_change_raises_lt_signature(w in knot_word(), pick in any::<prop::sample::Index>()) {
        prop_assume!(w.component_count() == 1);
        let d = w.closure().unwrap();
        let pos: Vec<u32> = d.crossings().iter().filter(|c| c.sign() > 0).map(|c| c.id).collect();
        prop_assume!(!pos.is_empty());
        let id = pos[pick.index(pos.len())];
        let before = seifert_matrix(&d).unwrap();
        let after = seifert_matrix(&d.change_crossings(&[id]).unwrap()).unwrap();
        prop_assert!(unit_skew(&before) && unit_skew(&after));
        check_determinant_identity(&before);
        let (s0, s1) = (lt_signature(&before, PLUMBING_THETA), lt_signature(&after, PLUMBING_THETA));
        prop_assume!(s0.is_ok() && s1.is_ok());
        prop_assert!(s1.unwrap() >= s0.unwrap());
    }

    #[test]
    fn lt_signature_is_additive(a in seifert_like(), b in seifert_like(), theta in 0.05f64..3.0) {
        let (sa, sb, sab) = (lt_signature(&a, theta), lt_signature(&b, theta), lt_signature(&a.block_diag(&b), theta));
        prop_assume!(sa.is_ok() && sb.is_ok() && sab.is_ok());
        prop_assert_eq!(sab.unwrap(), sa.unwrap() + sb.unwrap());
    }

    #[test]
    fn alexander_normalization(v in seifert_like()) {
        let d = alexander(&v).unwrap();
        prop_assert!(d.is_symmetric());
        prop_assert_eq!(d.eval_one(), BigInt::one());
        check_determinant_identity(&v);
    }
}
