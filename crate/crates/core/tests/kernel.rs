mod common;

use common::kernel::{exhaustive_small, kernel_failures, random_full_rank};
use omp_core::{ElementSet, OrientedMatroid, Sign, SignVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn exhaustive_up_to_five_elements() {
    for n in 2..=5 {
        for m in exhaustive_small(n) {
            let fails = kernel_failures(&m);
            assert!(fails.is_empty(), "{m}: {fails:?}");
        }
    }
}

#[test]
fn sampled_five_and_six_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 5..=6 {
        for r in 1..n {
            for _ in 0..12 {
                let m = random_full_rank(&mut rng, r, n, 2);
                let fails = kernel_failures(&m);
                assert!(fails.is_empty(), "{m}: {fails:?}");
            }
        }
    }
}

#[test]
fn random_up_to_eight_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let n = rng.gen_range(7..=8);
        let r = rng.gen_range(2..n - 1);
        let m = random_full_rank(&mut rng, r, n, 3);
        let fails = kernel_failures(&m);
        assert!(fails.is_empty(), "{m}: {fails:?}");
    }
}

#[test]
fn corrupted_cocircuits_are_rejected() {
    let m = random_full_rank(&mut ChaCha8Rng::seed_from_u64(3), 3, 6, 2);
    let om = OrientedMatroid::from_matrix_numbered(m).unwrap();
    let mut cocircuits = om.cocircuits().to_vec();
    let y = cocircuits[0];
    let e = y.support().iter().next().unwrap();
    cocircuits[0] = y.with(e, -y.get(e));
    let bad = OrientedMatroid::from_cocircuits(om.ground().clone(), 3, cocircuits);
    assert!(bad.map_or(true, |b| !b.verify_axioms().unwrap().passed()));
}

fn sign_vector(len: usize) -> impl Strategy<Value = SignVector> {
    prop::collection::vec(prop_oneof![Just(Sign::Plus), Just(Sign::Minus), Just(Sign::Zero)], len)
        .prop_map(|s| SignVector::from_signs(&s))
}

proptest! {
    #[test]
    fn composition_is_associative(a in sign_vector(9), b in sign_vector(9), c in sign_vector(9)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn orthogonality_is_symmetric(a in sign_vector(7), b in sign_vector(7)) {
        prop_assert_eq!(a.orthogonal(&b), b.orthogonal(&a));
        prop_assert_eq!(a.orthogonal(&b), (-a).orthogonal(&b));
    }

    #[test]
    fn canonical_form_is_idempotent(a in sign_vector(8)) {
        let c = a.canonical();
        prop_assert_eq!(c.canonical(), c);
        prop_assert!(c == a || c == -a);
    }

    #[test]
    fn separation_matches_signs(a in sign_vector(8), b in sign_vector(8)) {
        let sep: ElementSet = ElementSet::from_indices((0..8).filter(|&i| {
            let (x, y) = (a.get(i), b.get(i));
            !x.is_zero() && x == -y
        }));
        prop_assert_eq!(a.separation(&b), sep);
    }

    #[test]
    fn text_round_trip(a in sign_vector(10)) {
        prop_assert_eq!(a.to_string().parse::<SignVector>().unwrap(), a);
    }
}
