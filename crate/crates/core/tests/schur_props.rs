mod common;

use polyfun::corpus::{symmetric_power_map, veronese, waring};
use polyfun::schur::{map_space, Partition, PolynomialFunctor};
use proptest::prelude::*;

#[test]
fn tableau_count_matches_weyl_dimension() {
    common::ssyt_vs_weyl().unwrap();
}

#[test]
fn hook_content_small_values() {
    let p = |v: Vec<u32>| Partition::new(v).unwrap();
    assert_eq!(common::hook_content(&p(vec![2, 1]), 3), 8);
    assert_eq!(common::hook_content(&p(vec![3]), 2), 4);
    assert_eq!(common::hook_content(&p(vec![1, 1, 1]), 2), 0);
}

#[test]
fn shift_dimension_identity() {
    common::lr_shift_dimensions().unwrap();
}

#[test]
fn functor_order_is_irreflexive() {
    for text in common::SMALL_FUNCTORS {
        let p = PolynomialFunctor::parse(text).unwrap();
        assert!(!polyfun::schur::functor_less(&p, &p), "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_map_is_functorial(seed in any::<u64>()) {
        common::functoriality(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn shift_witness_block_diagonalises(seed in any::<u64>()) {
        common::shift_witness_conjugates(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn morphisms_are_natural(seed in any::<u64>(), which in 0usize..4) {
        let alpha = match which {
            0 => veronese().unwrap(),
            1 => waring(2, 3).unwrap(),
            2 => symmetric_power_map(2, 3, &[(vec![2, 1], common::q(6))]).unwrap(),
            _ => polyfun::corpus::q_rank(1).unwrap(),
        };
        common::naturality(&alpha, seed).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn map_space_elements_are_natural() {
    // each basis element on its own is a morphism from a point
    for (p, q) in [("2*S[1]", "S[2]"), ("S[1,1] + S[1]", "S[2,1]"), ("S[2]", "S[1,1]")] {
        let (p, q) = (PolynomialFunctor::parse(p).unwrap(), PolynomialFunctor::parse(q).unwrap());
        let basis = map_space(&p, &q).unwrap();
        for i in 0..basis.len() {
            let m = polyfun::geometry::morphism_from_instance(
                &polyfun::geometry::AffineVariety::point(),
                &p,
                &polyfun::geometry::AffineVariety::point(),
                &q,
                basis.d(),
                basis.element(i),
            )
            .unwrap();
            for seed in 0..4 {
                common::naturality(&m, seed).unwrap();
            }
        }
    }
}
