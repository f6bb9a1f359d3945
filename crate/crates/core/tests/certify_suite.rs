mod common;

use polyfun::algebra::Field;
use polyfun::certify::{certify, CertifyConfig, CertifyState, CertifyStatus};
use polyfun::corpus::{symmetric_power_map, waring};

fn cfg(max_d1: u32) -> CertifyConfig {
    CertifyConfig { max_d1: Some(max_d1), greenberg: None }
}

#[test]
fn self_inclusion_across_the_corpus() {
    let all = common::corpus_morphisms();
    assert_eq!(all.len(), 5);
    for (name, alpha) in all {
        common::self_inclusion(&alpha).unwrap_or_else(|e| panic!("{}: {}", name, e));
    }
}

#[test]
fn identity_witness_is_the_identity() {
    let alpha = waring(2, 3).unwrap();
    let mut state = CertifyState::new(&alpha, std::slice::from_ref(&alpha), cfg(0)).unwrap();
    let CertifyStatus::Certified(cert) = state.run().unwrap().clone() else { panic!("not certified") };
    let ws = state.witnesses(&cert, 64).unwrap();
    let (Some(w), Some(check)) = &ws[0] else { panic!("no witness") };
    assert!(check.is_valid());
    // Map(P, P) for P = 2·S¹ is 2×2 matrices; a witness at d1 = 0 is a
    // constant invertible map preserving u³ + v³
    assert_eq!(w.gamma.len(), 4);
    assert!(w.gamma.iter().all(|row| row.len() == 1));
}

#[test]
fn feasibility_is_monotone_in_d1() {
    let alpha = waring(2, 3).unwrap();
    let alpha_p = symmetric_power_map(2, 3, &[(vec![2, 1], common::q(6))]).unwrap();
    assert!(matches!(certify(&alpha, &alpha_p, cfg(0)).unwrap(), CertifyStatus::Exhausted { d1: 0 }));
    let mut previous = None;
    for d1 in 1..=2 {
        let CertifyStatus::Certified(cert) = certify(&alpha, &alpha_p, cfg(d1)).unwrap() else { panic!("d1 = {}", d1) };
        // the search stops at the first feasible window
        assert_eq!(cert.d1(), 1);
        if let Some(p) = previous {
            assert_eq!(p, cert.d1());
        }
        previous = Some(cert.d1());
    }
}

#[test]
fn returned_witnesses_revalidate() {
    let alpha = waring(2, 3).unwrap();
    let alpha_p = symmetric_power_map(2, 3, &[(vec![2, 1], common::q(6))]).unwrap();
    let mut state = CertifyState::new(&alpha, std::slice::from_ref(&alpha_p), cfg(2)).unwrap();
    let CertifyStatus::Certified(cert) = state.run().unwrap().clone() else { panic!("not certified") };
    for (w, check) in state.witnesses(&cert, 64).unwrap() {
        assert!(w.is_some());
        assert!(check.unwrap().is_valid());
    }
}

#[test]
fn negative_oracle_separates_sum_of_three_cubes() {
    // a catalecticant minor vanishes on every sum of two cubes but not on
    // x³ + y³ + z³, so no bounded search may succeed
    let two = polyfun::geometry::image_closure_instance(&waring(2, 3).unwrap(), 3).unwrap();
    let names = two.names();
    let minors = common::catalecticant_minors(&names);
    let three = polyfun::geometry::evaluate_morphism(&waring(3, 3).unwrap(), 3).unwrap();
    let mut point = vec![common::q(0); three.ring.len()];
    // v_i = e_i
    for i in 0..3 {
        point[i * 3 + i] = common::q(1);
    }
    let image: Vec<_> = three.fibre.iter().map(|f| f.eval(&point)).collect();
    assert!(minors.iter().any(|m| !m.eval(&image).is_zero()));
    let gb = two.groebner();
    assert!(minors.iter().all(|m| gb.contains(m)));
    let status = certify(&waring(2, 3).unwrap(), &waring(3, 3).unwrap(), cfg(1)).unwrap();
    assert!(matches!(status, CertifyStatus::Exhausted { d1: 1 }));
}

#[test]
fn budgeted_runs_resume_to_the_same_verdict() {
    let alpha = waring(2, 3).unwrap();
    let alpha_p = symmetric_power_map(2, 3, &[(vec![2, 1], common::q(6))]).unwrap();
    let mut state = CertifyState::new(&alpha, std::slice::from_ref(&alpha_p), cfg(2)).unwrap();
    let mut rounds = 0;
    while !state.is_done() {
        state.advance(3).unwrap();
        rounds += 1;
    }
    assert!(rounds > 1);
    let CertifyStatus::Certified(a) = state.status().clone() else { panic!() };
    let CertifyStatus::Certified(b) = certify(&alpha, &alpha_p, cfg(2)).unwrap() else { panic!() };
    assert_eq!((a.d1(), a.steps), (b.d1(), b.steps));
}
