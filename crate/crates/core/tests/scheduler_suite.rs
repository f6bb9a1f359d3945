mod common;

use polyfun::certify::{certify, CertifyConfig, CertifyStatus};
use polyfun::corpus::veronese;
use polyfun::implicitise::{advance_round, implicitise, Outcome, ScheduleConfig, TaskState, TaskStatus};

#[test]
fn outputs_do_not_depend_on_the_budget() {
    common::budget_independent(&veronese().unwrap(), &[1, 7, 256], 2, 3).unwrap();
}

#[test]
fn only_the_second_task_can_succeed() {
    // at K¹ every vector is a square, so the parameterisation is all of
    // S², which is not in the closure of the squares
    let alpha = veronese().unwrap();
    let cfg = ScheduleConfig::new(4, 2, CertifyConfig { max_d1: Some(2), greenberg: None }).unwrap();
    let mut tasks = vec![TaskState::new(&alpha, 1, &cfg).unwrap(), TaskState::new(&alpha, 2, &cfg).unwrap()];
    let mut rounds = 0;
    while tasks.iter().all(|t| t.status != TaskStatus::True) {
        advance_round(&mut tasks, &cfg).unwrap();
        rounds += 1;
        assert!(rounds < 10_000);
    }
    assert_eq!(tasks[1].status, TaskStatus::True);
    assert_ne!(tasks[0].status, TaskStatus::True);
}

#[test]
fn single_task_matches_standalone_certify() {
    let alpha = veronese().unwrap();
    let cfg = ScheduleConfig::new(1_000_000, 2, CertifyConfig::default()).unwrap();
    let mut task = vec![TaskState::new(&alpha, 2, &cfg).unwrap()];
    advance_round(&mut task, &cfg).unwrap();
    assert_eq!(task[0].status, TaskStatus::True);
    let CertifyStatus::Certified(direct) = certify(&alpha, &task[0].param.components[0], CertifyConfig::default()).unwrap() else {
        panic!("standalone certify failed");
    };
    let scheduled = task[0].certificate().unwrap();
    if task[0].param.components.len() == 1 {
        assert_eq!(scheduled.d1(), direct.d1());
        assert_eq!(scheduled.steps, direct.steps);
    }
}

#[test]
fn found_equations_vanish_on_images() {
    let alpha = veronese().unwrap();
    let Outcome::Found(found) = implicitise(&alpha, &ScheduleConfig::new(64, 4, CertifyConfig::default()).unwrap()).unwrap() else {
        panic!("cap reached");
    };
    assert_eq!(found.u_dim, 2);
    let x = polyfun::geometry::ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), found.u_dim, found.equations.gens.clone()).unwrap();
    for n in 1..=3 {
        let closure = polyfun::geometry::image_closure_instance(&alpha, n).unwrap();
        let smeared = polyfun::geometry::smear(&x, n).unwrap();
        let gb = closure.groebner();
        assert!(smeared.iter().all(|f| gb.contains(f)), "n = {}", n);
    }
    for (w, check) in &found.witnesses {
        if w.is_some() {
            assert!(check.as_ref().unwrap().is_valid());
        }
    }
}

#[test]
fn rounds_log_one_new_task_per_round_up_to_the_cap() {
    let alpha = veronese().unwrap();
    let Outcome::Found(found) = implicitise(&alpha, &ScheduleConfig::new(2, 2, CertifyConfig { max_d1: Some(2), greenberg: None }).unwrap()).unwrap() else {
        panic!("cap reached");
    };
    assert!(found.rounds.len() > 3, "rounds continue past the cap while a task is live");
    let mut live = 0;
    for (i, r) in found.rounds.iter().enumerate() {
        assert_eq!(r.round, i);
        if i <= 2 {
            // created, or skipped with a reason
            assert_ne!(r.created.is_some(), r.skipped.is_some());
        } else {
            assert!(r.created.is_none() && r.skipped.is_none());
        }
        live += r.created.is_some() as usize;
        assert_eq!(r.tasks.len(), live);
    }
}
