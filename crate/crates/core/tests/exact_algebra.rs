use gordian::algebra::*;
use gordian::invariants::restrict_scalars;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::*;

#[test]
fn integer_examples() {
    let d = |m: &IntMatrix| snf_integers(m).diagonal.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert_eq!(d(&IntMatrix::from_rows(&[[2, 0], [0, 3]])), ["1", "6"]);
    assert_eq!(d(&IntMatrix::identity(3)), ["1", "1", "1"]);
    assert_eq!(d(&IntMatrix::zeros(2, 2)), ["0", "0"]);
}

#[test]
fn eisenstein_examples() {
    let f = snf_cyclotomic(&cmat(2, &[(4, 0), (0, 0), (0, 0), (4, 0)])).unwrap();
    assert_eq!(f.diagonal, vec![ce(4, 0), ce(4, 0)]);
    assert_eq!(n_qe(&f, &ce(2, 0), 2), 2);
    let g = snf_cyclotomic(&cmat(2, &[(2, 0), (0, 0), (0, 0), (2, 0)])).unwrap();
    assert_eq!(n_qe(&g, &ce(2, 0), 2), 0);
    let empty = snf_cyclotomic(&CycloMatrix::zeros(3, 0, 0)).unwrap();
    assert_eq!(n_qe(&empty, &ce(2, 0), 1), 0);
    assert!(snf_cyclotomic(&CycloMatrix::zeros(5, 1, 1)).is_err());
}

fn transpose_c(m: &CycloMatrix) -> CycloMatrix {
    let mut t = CycloMatrix::zeros(3, m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

fn cyclo_strategy(max: usize) -> impl Strategy<Value = CycloMatrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec((-3i64..=3, -3i64..=3), n * n).prop_map(move |e| cmat(n, &e)))
}

fn int_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c)
            .prop_map(move |e| IntMatrix::from_vec(r, c, e.into_iter().map(BigInt::from).collect()))
    })
}

#[test]
fn quotient_sizes() {
    assert_eq!(Quotient::new(&ce(2, 0)).size(), 4);
    assert_eq!(Quotient::new(&ce(4, 0)).size(), 16);
    assert_eq!(Quotient::new(&ce(1, -1)).size(), 3);
    assert_eq!(Quotient::new(&ce(1, -1).pow(2)).size(), 9);
    // the zero matrix has rank 0, the identity full rank
    assert_eq!(brute_rank(&CycloMatrix::zeros(3, 2, 2), &ce(2, 0)), 0);
    assert_eq!(brute_rank(&CycloMatrix::identity(3, 2), &ce(4, 0)), 2);
    // over R/(4), diag(2, 1) needs two generators and diag(4, 1) one
    assert_eq!(brute_rank(&cmat(2, &[(2, 0), (0, 0), (0, 0), (1, 0)]), &ce(4, 0)), 2);
    assert_eq!(brute_rank(&cmat(2, &[(4, 0), (0, 0), (0, 0), (1, 0)]), &ce(4, 0)), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn snf_integer_unimodular_invariance(m in int_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_int_unimodular(m.rows(), &mut rng);
        let v = random_int_unimodular(m.cols(), &mut rng);
        let f = snf_integers(&m);
        prop_assert!(f.is_chain());
        prop_assert_eq!(snf_integers(&(&(&u * &m) * &v)), f);
        let (g, p, q) = snf_integers_with_transforms(&m);
        let d = &(&p * &m) * &q;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < g.diagonal.len() { g.diagonal[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(num_traits::Signed::abs(d.get(i, j)), num_traits::Signed::abs(&want));
            }
        }
    }

    #[test]
    fn snf_eisenstein_unimodular_invariance(m in cyclo_strategy(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_cyclo_unimodular(m.rows(), &mut rng);
        let v = random_cyclo_unimodular(m.cols(), &mut rng);
        let f = snf_cyclotomic(&m).unwrap();
        prop_assert!(f.is_chain());
        prop_assert_eq!(snf_cyclotomic(&u.mul(&m).mul(&v)).unwrap(), f.clone());
        // transposing does not change the cokernel
        prop_assert_eq!(snf_cyclotomic(&transpose_c(&m)).unwrap(), f.clone());
        // restriction of scalars agrees with the integer Smith form of the expansion
        let direct = snf_integers(&expand_to_integers(&m));
        prop_assert_eq!(restrict_scalars(&f, 3).torsion_list(), direct.torsion_list());
        if let Some(order) = f.order() {
            prop_assert_eq!(direct.order(), Some(order));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_mod_qe_counts_summands(m in cyclo_strategy(4), qi in 0usize..2, e in 1u32..=2) {
        let q = [ce(2, 0), ce(1, -1)][qi].clone();
        let f = snf_cyclotomic(&m).unwrap();
        let rank = rank_mod_qe(&m, &q, e).unwrap();
        prop_assert_eq!(n_qe(&f, &q, e), m.rows() - rank);
        if m.rows() <= 2 {
            prop_assert_eq!(brute_rank(&m, &q.pow(e)), rank);
        }
    }
}
