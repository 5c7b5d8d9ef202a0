use gordian::diagram::{genus_positive, seifert_matrix};
use gordian::family::*;
use gordian::invariants::{alexander, signature};

#[test]
fn tangle_closes_to_t25() {
    let t = bundled_tangle();
    let c = check_tangle(&t).unwrap();
    assert!(c.positive);
    assert!(c.closure_is_t25, "{}", c.closure_delta);
}

#[test]
fn family_small_n() {
    let t = bundled_tangle();
    for n in 1..=3 {
        let r = family_report(&t, n).unwrap();
        assert_eq!(r.genus, 2 + 5 * n as i64);
        assert_eq!(r.double_cover.torsion_list(), r.expected_double_cover.torsion_list(), "n = {}", n);
        let order: num_bigint::BigInt = r.expected_double_cover.torsion_list().iter().product();
        assert_eq!(r.determinant, order);
        let m = 2 * n + 1;
        assert_eq!(r.generators, if m % 5 == 0 { m + 1 } else { m });
        assert_eq!(r.unknotting_set.len(), 2 + 7 * n);
        assert_eq!(r.delta_after_set, "1");
        assert!(r.consistent());
    }
}

#[test]
fn d1_facts() {
    let t = bundled_tangle();
    let d = build_family_diagram(&t, 1);
    assert_eq!(d.len(), 24);
    assert!(d.is_positive() && d.is_knot());
    assert_eq!(genus_positive(&d).unwrap(), 7);
    let v = seifert_matrix(&d).unwrap();
    assert_eq!(signature(&v), -10);
    // the recipes inside one copy: a single remaining positive or negative crossing
    let one = cyclic_closure(&t, 1).unwrap();
    for r in [&t.recipe_a, &t.recipe_b, &t.recipe_c] {
        let ids: Vec<u32> = r.iter().map(|&i| i as u32).collect();
        let delta = alexander(&seifert_matrix(&one.change_crossings(&ids).unwrap()).unwrap()).unwrap();
        assert!(delta.is_one());
    }
}

#[test]
#[ignore = "extended suite: n = 4 and n = 7"]
fn family_extended() {
    let t = bundled_tangle();
    for n in [4, 7] {
        assert!(family_report(&t, n).unwrap().consistent(), "n = {}", n);
    }
}
