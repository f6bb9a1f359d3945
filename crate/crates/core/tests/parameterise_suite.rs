mod common;

use polyfun::algebra::Q;
use polyfun::corpus::{veronese, waring};
use polyfun::geometry::{evaluate_morphism, image_closure_instance, point_membership, ClosedSubsetRepr, Morphism};
use polyfun::parameterise::parameterise;
use rand::Rng;

fn trio() -> Vec<(String, ClosedSubsetRepr)> {
    common::load("trio.pf").model.subsets.into_iter().collect()
}

fn closure_subset(alpha: &Morphism, n: usize) -> ClosedSubsetRepr {
    let eqs = image_closure_instance(alpha, n).unwrap();
    ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), n, eqs.gens).unwrap()
}

#[test]
fn trio_unions_match_instances() {
    for (name, x) in trio() {
        let max_n = if x.q.degree() == 1 { 3 } else { 2 };
        common::parameterise_complete(&x, max_n).unwrap_or_else(|e| panic!("{}: {}", name, e));
    }
}

#[test]
fn components_land_in_the_subset() {
    let mut r = common::rng(11);
    for (name, x) in trio() {
        let res = parameterise(&x).unwrap();
        for beta in &res.components {
            for n in 0..=3 {
                let eval = evaluate_morphism(beta, n).unwrap();
                for _ in 0..20 {
                    let pt: Vec<Q> = (0..eval.ring.len()).map(|_| common::q(r.gen_range(-4..=4))).collect();
                    let image: Vec<Q> = eval.components().iter().map(|f| f.eval(&pt)).collect();
                    assert!(point_membership(&x, n, &image).unwrap(), "{} at n = {}", name, n);
                }
            }
        }
    }
}

#[test]
fn whole_and_zero_shapes() {
    let subsets: std::collections::BTreeMap<_, _> = trio().into_iter().collect();
    let whole = parameterise(&subsets["whole"]).unwrap();
    assert_eq!(whole.components.len(), 1);
    assert_eq!(whole.functor().to_string(), "S[1]");
    let zero = parameterise(&subsets["zero"]).unwrap();
    for beta in &zero.components {
        let eval = evaluate_morphism(beta, 2).unwrap();
        assert!(eval.fibre.iter().all(|f| f.is_zero()));
    }
}

#[test]
fn every_trace_is_monotone() {
    let mut subsets: Vec<ClosedSubsetRepr> = trio().into_iter().map(|(_, x)| x).collect();
    subsets.push(closure_subset(&veronese().unwrap(), 2));
    subsets.push(closure_subset(&waring(2, 3).unwrap(), 2));
    subsets.push(closure_subset(&waring(2, 2).unwrap(), 2));
    for x in &subsets {
        let res = parameterise(x).unwrap();
        common::trace_monotone(&res.trace).unwrap();
        assert!(!res.trace.log().is_empty());
    }
}

#[test]
fn empty_subset_has_no_components() {
    let x = &common::load("trio.pf").model.subsets["zero"];
    let one = polyfun::algebra::Poly::one(x.base.nvars() + 1);
    let empty = ClosedSubsetRepr::new(x.base.clone(), x.q.clone(), 1, vec![one]);
    // a constant is homogeneous of weight zero
    let res = parameterise(&empty.unwrap()).unwrap();
    assert!(res.is_empty());
}
