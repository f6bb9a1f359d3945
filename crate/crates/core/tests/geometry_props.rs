mod common;

use polyfun::algebra::{Field, Q};
use polyfun::corpus::{veronese, waring};
use polyfun::geometry::{evaluate_morphism, image_closure_instance, point_membership, smear, ClosedSubsetRepr};
use proptest::prelude::*;
use rand::Rng;

fn trio(name: &str) -> ClosedSubsetRepr {
    common::load("trio.pf").model.subsets[name].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn smear_contains_pulled_back_equations(seed in any::<u64>(), n in 1usize..=3) {
        for name in ["zero", "rank1"] {
            common::smear_consistency(&trio(name), n, seed).map_err(TestCaseError::fail)?;
        }
    }
}

#[test]
fn closures_restrict_consistently() {
    let v = veronese().unwrap();
    for n in 1..=2 {
        common::pullback_consistency(&v, n).unwrap();
    }
    common::pullback_consistency(&waring(2, 3).unwrap(), 1).unwrap();
}

#[test]
fn smear_output_is_graded() {
    let x = trio("rank1");
    for n in 1..=3 {
        let (ring, _) = polyfun::geometry::instance_ring(&x.base.ring, &x.q, n, "y").unwrap();
        let w = ring.weights();
        assert!(smear(&x, n).unwrap().iter().all(|f| f.is_homogeneous(&w)));
    }
}

#[test]
fn closure_vanishes_on_images() {
    let mut r = common::rng(7);
    for alpha in [veronese().unwrap(), waring(2, 3).unwrap()] {
        for n in 1..=3 {
            let closure = image_closure_instance(&alpha, n).unwrap();
            let eval = evaluate_morphism(&alpha, n).unwrap();
            for _ in 0..20 {
                let pt: Vec<Q> = (0..eval.ring.len()).map(|_| common::q(r.gen_range(-5..=5))).collect();
                let image: Vec<Q> = eval.components().iter().map(|f| f.eval(&pt)).collect();
                assert!(closure.gens.iter().all(|g| g.eval(&image).is_zero()), "n = {}", n);
            }
        }
    }
}

#[test]
fn determinantal_membership_examples() {
    let x = trio("rank1");
    // [[1,2],[2,4]] has rank one; the identity does not
    assert!(point_membership(&x, 2, &[common::q(1), common::q(2), common::q(4)]).unwrap());
    assert!(!point_membership(&x, 2, &[common::q(1), common::q(0), common::q(1)]).unwrap());
    // the zero map sends any point of X(K^2) to 0, so 0 lies in X(K^3)
    assert!(point_membership(&x, 3, &vec![common::q(0); 6]).unwrap());
}
