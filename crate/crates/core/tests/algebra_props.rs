mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_is_unique(seed in any::<u64>()) {
        common::gb_uniqueness(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn radical_generators_pass_rabinowitsch(seed in any::<u64>()) {
        common::rabinowitsch(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn weighted_homogeneous_input_stays_homogeneous(seed in any::<u64>()) {
        common::grading(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn elimination_contains_the_resultant(seed in any::<u64>()) {
        common::elimination_vs_resultant(seed).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn resultant_of_two_lines() {
    use polyfun::algebra::Poly;
    // x − y and x + y − 2 meet at y = 1
    let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
    let two = Poly::constant(2, common::q(2));
    let r = common::resultant(&x.sub(&y), &x.add(&y).sub(&two), 0);
    assert_eq!(r, y.scale(&common::q(2)).sub(&two));
}
