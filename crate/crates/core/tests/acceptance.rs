//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see the report.

use std::path::Path;
use std::time::{Duration, Instant};

use gordian::algebra::textfmt::format_int_matrix;
use gordian::algebra::*;
use gordian::algebraic::{k11a361_certificate, verify_certificate};
use gordian::braid::{replay, unknotting_set, BraidWord};
use gordian::catalog::bundled_catalog;
use gordian::diagram::{genus_positive, seifert_matrix};
use gordian::family::{build_family_diagram, bundled_tangle, family_report, family_unknotting_set};
use gordian::invariants::*;
use gordian::knots::{d1, k11n183, k11n183_marked, named_matrix, NAMES};
use gordian::search::{search, witness_check, SearchTask};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($fmt:tt)+) => {
        if !$c {
            return Err(format!($($fmt)+));
        }
    };
}

fn m(name: &str) -> IntMatrix {
    named_matrix(name).unwrap()
}

fn two() -> CycloElement {
    CycloElement::integer(3, 2)
}

fn module(name: &str) -> String {
    branched_homology(&m(name), 3).unwrap().module.unwrap().module_string()
}

fn delta_is_one(v: &IntMatrix) -> bool {
    alexander(v).unwrap().is_one()
}

fn criterion_1() -> Outcome {
    for (k, want) in [("K11n183", "(R3/(4))^2"), ("T23#2", "(R3/(2))^2"), ("T25", "0")] {
        let got = module(k);
        ensure!(got == want, "{}: {} != {}", k, got, want);
    }
    let n: Vec<usize> = ["K11n183", "T23#2", "T25"].iter().map(|k| n_pqe(&m(k), 3, &two(), 2).unwrap()).collect();
    ensure!(n == [2, 0, 0], "n_322 = {:?}", n);
    for other in ["T25", "T23#2"] {
        let b = gordian_lower_bound(&m("K11n183"), &m(other), 3, &two(), 2).unwrap();
        ensure!(b == 2, "bound vs {} = {}", other, b);
    }
    Ok("modules (R3/(4))^2, (R3/(2))^2, 0; n_322 = 2/0/0; bounds 2, 2".into())
}

fn criterion_2() -> Outcome {
    let dim = branched_homology(&m("K11n183"), 3).unwrap().dim_mod(2);
    ensure!(dim == 4, "dim = {}", dim);
    let b = wendt_bound(&m("K11n183"), &m("T25"), 3, 2).unwrap();
    ensure!(b == 2.into(), "bound = {}", b);
    Ok("dim_F2 = 4, bound vs T25 = 2".into())
}

fn braid_case(w: &BraidWord) -> Result<(), String> {
    let d = w.closure().unwrap();
    let g = genus_positive(&d).unwrap() as usize;
    let expected = (w.len() + 1 - w.strands()) / 2;
    ensure!(g == expected, "{}: genus {} != (c - s + 1)/2 = {}", w, g, expected);
    let cert = unknotting_set(w).map_err(|e| format!("{}: {}", w, e))?;
    ensure!(cert.selected.len() == expected, "{}: {} changes, want {}", w, cert.selected.len(), expected);
    ensure!(replay(&cert).map_err(|e| e.to_string())?.is_empty(), "{}: replay leaves crossings", w);
    let after = seifert_matrix(&d.change_crossings(&cert.selected).unwrap()).unwrap();
    ensure!(delta_is_one(&after), "{}: Δ after changes is not 1", w);
    Ok(())
}

fn criterion_3() -> Outcome {
    for (p, q, size) in [(2, 3, 1), (3, 4, 3), (4, 5, 6)] {
        let w = BraidWord::torus(p, q);
        braid_case(&w)?;
        ensure!(unknotting_set(&w).unwrap().selected.len() == size, "T({},{})", p, q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        braid_case(&random_positive_knot_word(6, 30, &mut rng))?;
    }
    Ok("T(2,3), T(3,4), T(4,5) sizes 1, 3, 6; 500 random positive braid knots".into())
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut three = Vec::new();
    for a in -20i64..=20 {
        for b in -20i64..=20 {
            if (a, b) != (0, 0) && a.gcd(&b) != 1 {
                continue;
            }
            let r = two_trefoil_report(a, b).map_err(|e| e.to_string())?;
            let d = (a * a + a * b + b * b) as u64;
            ensure!(alexander(&trefoil_plumbing_matrix(a, b)).unwrap() == delta_d(d), "({}, {}): Δ != Δ_{}", a, b, d);
            let want = match d {
                0 => PlumbingTag::TrefoilSum,
                1 => PlumbingTag::T25,
                3 => PlumbingTag::K10n14,
                _ => PlumbingTag::SignatureMinusTwo,
            };
            ensure!(r.tag == want, "({}, {}): tag {:?}", a, b, r.tag);
            if d == 3 {
                three.push((a, b));
            }
            if d >= 7 {
                ensure!(r.lt_signature == -2, "({}, {}): σ = {}", a, b, r.lt_signature);
                ensure!(r.min_abs_eigenvalue > 1e-6, "({}, {}): eigenvalue {}", a, b, r.min_abs_eigenvalue);
            }
            checked += 1;
        }
    }
    three.sort();
    ensure!(three == [(-2, 1), (-1, -1), (-1, 2), (1, -2), (1, 1), (2, -1)], "d = 3 pairs {:?}", three);
    Ok(format!("{} pairs", checked))
}

fn criterion_5() -> Outcome {
    let got = module("K10n14");
    ensure!(got == "R3/(5)", "module {}", got);
    let b = gordian_lower_bound(&m("K10n14"), &m("K11n183"), 3, &two(), 2).unwrap();
    ensure!(b == 2, "bound {}", b);
    Ok("R3/(5), bound vs K11n183 = 2".into())
}

fn criterion_6() -> Outcome {
    let cert = k11a361_certificate();
    let v = verify_certificate(&cert).map_err(|e| e.to_string())?;
    let b = IntMatrix::from_rows(&[[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, -4, -3], [0, 1, -2, -4]]);
    ensure!(cert.steps[1].result == b, "B = {}", format_int_matrix(&cert.steps[1].result));
    ensure!(
        v.final_matrix == IntMatrix::from_rows(&[[0, -1], [0, -3]]),
        "final {}",
        format_int_matrix(&v.final_matrix)
    );
    ensure!(delta_is_one(&v.final_matrix), "final Δ not trivial");
    ensure!(v.ua_upper_bound == 2, "ua = {}", v.ua_upper_bound);
    Ok("B and [[0,-1],[0,-3]] reproduced, ua <= 2".into())
}

fn criterion_7() -> Outcome {
    let k = k11n183();
    let c3 = search(&SearchTask::new(k.clone(), 3), 1, None).map_err(|e| e.to_string())?;
    ensure!(c3.witnesses.iter().any(|w| w.ids == k11n183_marked()), "marked triple not found");
    let c1 = search(&SearchTask::new(k, 1), 1, None).map_err(|e| e.to_string())?;
    ensure!(c1.witnesses.is_empty(), "k_max = 1 found {:?}", c1.witnesses);
    let c2 = search(&SearchTask::new(d1(), 2), 1, None).map_err(|e| e.to_string())?;
    ensure!(c2.witnesses.is_empty() && c2.examined_total() == 1 + 24 + 276, "D1 k_max = 2");
    let set = family_unknotting_set(&bundled_tangle(), 1);
    ensure!(set.len() == 9 && witness_check(&d1(), &set).unwrap().is_one(), "9-crossing set");
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts/d1_k8.sh");
    ensure!(script.exists(), "missing {}", script.display());
    Ok(format!("K11n183 k3 has {:?}, k1 none; D1 k2 none; 9-set Δ = 1; long run in scripts/d1_k8.sh", k11n183_marked()))
}

fn criterion_8() -> Outcome {
    let t = bundled_tangle();
    for n in 1..=3 {
        let r = family_report(&t, n).map_err(|e| e.to_string())?;
        ensure!(r.genus == 2 + 5 * n as i64, "n = {}: genus {}", n, r.genus);
        ensure!(
            r.double_cover.torsion_list() == r.expected_double_cover.torsion_list(),
            "n = {}: H1 {:?}",
            n,
            r.double_cover.torsion_list()
        );
        ensure!(r.unknotting_set.len() == 2 + 7 * n && r.delta_after_set == "1", "n = {}: set", n);
    }
    let z = family_report(&t, 1).unwrap().double_cover.torsion_list();
    ensure!(z == [BigInt::from(5), 5.into(), 15.into()], "n = 1: {:?}", z);
    Ok("n = 1, 2, 3".into())
}

fn unit_skew(v: &IntMatrix) -> bool {
    (v - &v.transpose()).det().is_one()
}

fn determinant_identity(v: &IntMatrix) -> bool {
    let at = alexander(v).unwrap().eval_int(-1);
    let d = at.to_integer().abs();
    at.is_integer() && branched_homology(v, 2).unwrap().abelianization.order() == Some(d)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = random_imat(r, c, 6, &mut rng);
        let (u, v) = (random_int_unimodular(r, &mut rng), random_int_unimodular(c, &mut rng));
        ensure!(snf_integers(&(&(&u * &a) * &v)) == snf_integers(&a), "integer SNF {}", format_int_matrix(&a));
        let n = rng.gen_range(1..=4);
        let a = random_cmat(n, 3, &mut rng);
        let (u, v) = (random_cyclo_unimodular(n, &mut rng), random_cyclo_unimodular(n, &mut rng));
        ensure!(snf_cyclotomic(&u.mul(&a).mul(&v)).unwrap() == snf_cyclotomic(&a).unwrap(), "R3 SNF");
    }
    let mut brute = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=4);
        let a = random_cmat(n, 3, &mut rng);
        let q = [ce(2, 0), ce(1, -1)][i % 2].clone();
        let e = rng.gen_range(1..=2);
        let rank = rank_mod_qe(&a, &q, e).unwrap();
        ensure!(n_qe(&snf_cyclotomic(&a).unwrap(), &q, e) == n - rank, "rank equality");
        if n <= 2 {
            ensure!(brute_rank(&a, &q.pow(e)) == rank, "brute-force rank");
            brute += 1;
        }
    }
    let mut constructed = Vec::new();
    let mut skipped = 0;
    for i in 0..200 {
        let g = rng.gen_range(1..=3);
        let b = random_seifert(g, 3, &mut rng);
        let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-3..=3)).collect();
        let w: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-3..=3)).collect();
        let x = rng.gen_range(-3..=3);
        let eps = if i % 2 == 0 { 1 } else { -1 };
        let c = crossing_change_model(&b, &v, &w, x, eps).unwrap();
        let bt = cancel_corner(&c);
        for q in [two(), ce(1, -1)] {
            let e = 1 + (i % 3) as u32;
            let (nb, nc) = (n_pqe(&bt, 3, &q, e).unwrap(), n_pqe(&c, 3, &q, e).unwrap());
            ensure!(nb.abs_diff(nc) <= 1, "n_3qe jumped {} -> {}", nb, nc);
        }
        // positive-to-negative is eps = +1
        let c = crossing_change_model(&b, &v, &w, x, 1).unwrap();
        let bt = cancel_corner(&c);
        match (lt_signature(&c, PLUMBING_THETA), lt_signature(&bt, PLUMBING_THETA)) {
            (Ok(sc), Ok(sb)) => ensure!(sc >= sb, "LT signature dropped {} -> {}", sb, sc),
            _ => skipped += 1,
        }
        constructed.extend([b, c, bt]);
    }
    let mut corpus: Vec<IntMatrix> = NAMES.iter().map(|n| m(n)).collect();
    for e in bundled_catalog() {
        corpus.extend(e.matrix.iter().cloned().chain(e.pd.iter().map(|d| seifert_matrix(d).unwrap())));
    }
    for n in 1..=3 {
        corpus.push(seifert_matrix(&build_family_diagram(&bundled_tangle(), n)).unwrap());
    }
    for _ in 0..50 {
        corpus.push(seifert_matrix(&random_positive_knot_word(5, 20, &mut rng).closure().unwrap()).unwrap());
    }
    for a in -3..=3 {
        for b in -3..=3 {
            corpus.push(trefoil_plumbing_matrix(a, b));
        }
    }
    let total = corpus.len() + constructed.len();
    for v in corpus.iter().chain(&constructed) {
        ensure!(unit_skew(v), "det(V - V^T) != 1 for {}", format_int_matrix(v));
    }
    for v in &corpus {
        ensure!(determinant_identity(v), "|Δ(-1)| != |H1(Σ2)| for {}", format_int_matrix(v));
    }
    Ok(format!(
        "SNF 100+100, rank 200 ({} brute-forced), n_pqe 200, LT 200 ({} near-singular skipped), det(V-V^T) on {}, |Δ(-1)| on {}",
        brute,
        skipped,
        total,
        corpus.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome, Option<u64>); 9] = [
        (1, criterion_1, Some(1)),
        (2, criterion_2, Some(1)),
        (3, criterion_3, Some(30)),
        (4, criterion_4, Some(10)),
        (5, criterion_5, None),
        (6, criterion_6, None),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, None),
    ];
    let mut failed = Vec::new();
    for (n, f, limit) in criteria {
        let t0 = Instant::now();
        let result = f();
        let dt = t0.elapsed();
        let over = limit.is_some_and(|l| dt > Duration::from_secs(l));
        let limit_s = limit.map(|l| format!(", limit {} s", l)).unwrap_or_default();
        let (status, detail) = match (&result, over) {
            (Ok(s), false) => ("PASS", s.clone()),
            (Ok(s), true) => ("FAIL", format!("{} (too slow)", s)),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!("criterion {}: {} {} [{:.2} s{}]", n, status, detail, dt.as_secs_f64(), limit_s);
        if status == "FAIL" {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
