//! Ideal operations built on Gröbner bases.

use super::groebner::GroebnerBasis;
use super::order::MonomialOrder;
use super::poly::Poly;
use super::scalar::Field;

/// Reduced basis in the default order.
pub fn basis<F: Field>(gens: &[Poly<F>], nvars: usize) -> GroebnerBasis<F> {
    GroebnerBasis::new(gens.to_vec(), MonomialOrder::DegRevLex, nvars)
}

/// Generators of `I ∩ K[remaining variables]`, still written in the full
/// ring (the dropped variables simply do not occur).
pub fn eliminate<F: Field>(gens: &[Poly<F>], drop: &[usize], nvars: usize) -> Vec<Poly<F>> {
    if drop.is_empty() {
        return basis(gens, nvars).polys();
    }
    let gb = GroebnerBasis::new(gens.to_vec(), MonomialOrder::elimination(nvars, drop), nvars);
    gb.polys().into_iter().filter(|p| drop.iter().all(|&v| !p.uses_var(v))).collect()
}

/// Eliminate and then remove the dropped variables from the ring.
pub fn eliminate_and_restrict<F: Field>(gens: &[Poly<F>], drop: &[usize], nvars: usize) -> Vec<Poly<F>> {
    let keep: Vec<usize> = (0..nvars).filter(|v| !drop.contains(v)).collect();
    eliminate(gens, drop, nvars)
        .into_iter()
        .map(|p| p.restrict(&keep).expect("eliminated variable absent"))
        .collect()
}

pub fn is_trivial<F: Field>(gens: &[Poly<F>], nvars: usize) -> bool {
    if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return true;
    }
    basis(gens, nvars).is_unit()
}

pub fn membership<F: Field>(f: &Poly<F>, gens: &[Poly<F>]) -> bool {
    basis(gens, f.nvars()).contains(f)
}

/// `I : h^∞` via the extra variable `w` and the relation `w·h − 1`.
pub fn saturate<F: Field>(gens: &[Poly<F>], h: &Poly<F>, nvars: usize) -> Vec<Poly<F>> {
    if h.is_constant() {
        assert!(!h.is_zero(), "saturation by zero");
        return basis(gens, nvars).polys();
    }
    let mut ext: Vec<Poly<F>> = gens.iter().map(|g| g.extend(1)).collect();
    let w = Poly::var(nvars + 1, nvars);
    ext.push(w.mul(&h.extend(1)).sub(&Poly::one(nvars + 1)));
    let out = eliminate_and_restrict(&ext, &[nvars], nvars + 1);
    basis(&out, nvars).polys()
}

/// `I ∩ J` via `t·I + (1 − t)·J`.
pub fn intersect<F: Field>(a: &[Poly<F>], b: &[Poly<F>], nvars: usize) -> Vec<Poly<F>> {
    let t = Poly::var(nvars + 1, nvars);
    let one_minus_t = Poly::one(nvars + 1).sub(&t);
    let mut gens: Vec<Poly<F>> = a.iter().map(|g| t.mul(&g.extend(1))).collect();
    gens.extend(b.iter().map(|g| one_minus_t.mul(&g.extend(1))));
    let out = eliminate_and_restrict(&gens, &[nvars], nvars + 1);
    basis(&out, nvars).polys()
}

/// Ideal equality via reduced bases.
pub fn same_ideal<F: Field>(a: &[Poly<F>], b: &[Poly<F>], nvars: usize) -> bool {
    basis(a, nvars) == basis(b, nvars)
}

/// `f ∈ √I` iff `1 ∈ I + (w·f − 1)`.
pub fn radical_membership<F: Field>(f: &Poly<F>, gens: &[Poly<F>]) -> bool {
    let n = f.nvars();
    let mut ext: Vec<Poly<F>> = gens.iter().map(|g| g.extend(1)).collect();
    let w = Poly::var(n + 1, n);
    ext.push(w.mul(&f.extend(1)).sub(&Poly::one(n + 1)));
    is_trivial(&ext, n + 1)
}
