//! Radicals over the rationals.
//!
//! Principal ideals use the squarefree part, zero-dimensional ideals adjoin
//! squarefree univariate eliminants, and positive-dimensional ideals are
//! reduced to the zero-dimensional case over `K(u)` for a maximal
//! independent set `u`, followed by contraction and recursion on the
//! removed locus.

use std::sync::Arc;

use super::gcd::{gcd, squarefree_part};
use super::groebner::GroebnerBasis;
use super::ideal::{basis, intersect, saturate};
use super::order::MonomialOrder;
use super::poly::Poly;
use super::scalar::Q;
use super::AlgebraError;

/// Coefficient in `K[u]` of the leading `x`-monomial of `g`, where `order`
/// ranks the `x` block above everything else.
pub(crate) fn leading_coeff_in_block(g: &Poly<Q>, xvars: &[usize], order: &MonomialOrder) -> Poly<Q> {
    let lead = g.terms().iter().map(|t| &t.0).max_by(|a, b| order.cmp(a, b)).expect("nonzero");
    let key: Vec<u32> = xvars.iter().map(|&v| lead[v]).collect();
    let terms = g.terms().iter().filter(|(e, _)| xvars.iter().zip(&key).all(|(&v, &k)| e[v] == k)).map(|(e, c)| {
        let mut e = e.clone();
        for &v in xvars {
            e[v] = 0;
        }
        (e, c.clone())
    });
    Poly::from_terms(g.nvars(), terms)
}

/// The order `x >> u` with degree-reverse-lexicographic blocks.
pub(crate) fn block_order(nvars: usize, u: &[usize]) -> (Vec<usize>, MonomialOrder) {
    let x: Vec<usize> = (0..nvars).filter(|v| !u.contains(v)).collect();
    let mut blocks = vec![x.clone()];
    if !u.is_empty() {
        blocks.push(u.to_vec());
    }
    (x, MonomialOrder::Blocks(Arc::new(blocks)))
}

/// Squarefree product of the distinct leading coefficients (in `K[u]`) of a
/// basis computed in `order`.
pub(crate) fn separant_product(gb: &GroebnerBasis<Q>, xvars: &[usize]) -> Poly<Q> {
    let n = gb.nvars();
    let mut h = Poly::one(n);
    for g in gb.polys() {
        let c = leading_coeff_in_block(&g, xvars, gb.order());
        if c.is_constant() {
            continue;
        }
        let c = squarefree_part(&c);
        let common = gcd(&h, &c);
        h = h.mul(&c.exact_div(&common).expect("gcd divides"));
    }
    h
}

fn is_linear(gb: &GroebnerBasis<Q>) -> bool {
    gb.polys().iter().all(|p| p.total_degree() <= 1)
}

/// Generators of the radical of the ideal generated by `gens`, as a reduced
/// drl basis.
pub fn radical(gens: &[Poly<Q>], nvars: usize) -> Result<Vec<Poly<Q>>, AlgebraError> {
    let gb = basis(gens, nvars);
    radical_of_basis(&gb)
}

fn radical_of_basis(gb: &GroebnerBasis<Q>) -> Result<Vec<Poly<Q>>, AlgebraError> {
    let n = gb.nvars();
    if gb.is_unit() || gb.is_zero_ideal() || is_linear(gb) {
        return Ok(gb.polys());
    }
    if gb.len() == 1 {
        return Ok(vec![squarefree_part(&gb.polys()[0])]);
    }
    let u = gb.max_independent_set();
    let (x, order) = block_order(n, &u);

    // squarefree eliminants in K[u, x_i]
    let mut extra: Vec<Poly<Q>> = Vec::new();
    for &xi in &x {
        let others: Vec<usize> = x.iter().copied().filter(|&v| v != xi).collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        if !others.is_empty() {
            blocks.push(others.clone());
        }
        blocks.push(vec![xi]);
        if !u.is_empty() {
            blocks.push(u.clone());
        }
        let eb = GroebnerBasis::new(gb.polys(), MonomialOrder::Blocks(Arc::new(blocks)), n);
        let cand = eb
            .polys()
            .into_iter()
            .filter(|p| p.uses_var(xi) && others.iter().all(|&v| !p.uses_var(v)))
            .min_by_key(|p| p.degree_in(xi))
            .ok_or_else(|| AlgebraError::Unsupported("no eliminant over the independent set".into()))?;
        if cand.degree_in(xi) <= 1 {
            continue;
        }
        let g = gcd(&cand, &cand.derivative(xi));
        if g.uses_var(xi) {
            extra.push(cand.exact_div(&g).expect("gcd divides"));
        }
    }

    let mut l = gb.polys();
    l.extend(extra);
    if u.is_empty() {
        // zero-dimensional: adjoining squarefree eliminants gives the radical
        return Ok(basis(&l, n).polys());
    }
    let lb = GroebnerBasis::new(l.clone(), order.clone(), n);
    let top = saturate(&l, &separant_product(&lb, &x), n);

    let ib = GroebnerBasis::new(gb.polys(), order, n);
    let h = separant_product(&ib, &x);
    if h.is_constant() {
        return Ok(basis(&top, n).polys());
    }
    let mut rest = gb.polys();
    rest.push(h);
    let rb = basis(&rest, n);
    if rb.is_unit() {
        return Ok(basis(&top, n).polys());
    }
    let low = radical_of_basis(&rb)?;
    Ok(intersect(&top, &low, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::{radical_membership, same_ideal};

    fn v(n: usize, i: usize) -> Poly<Q> {
        Poly::var(n, i)
    }

    #[test]
    fn principal_and_monomial() {
        let (x, y) = (v(2, 0), v(2, 1));
        assert_eq!(radical(&[x.pow(2)], 2).unwrap(), vec![x.clone()]);
        let r = radical(&[x.pow(2), x.mul(&y), y.pow(2)], 2).unwrap();
        assert!(same_ideal(&r, &[x.clone(), y.clone()], 2));
    }

    #[test]
    fn idempotent_on_radical_input() {
        let x = v(1, 0);
        let g = x.sub(&Poly::one(1));
        assert_eq!(radical(std::slice::from_ref(&g), 1).unwrap(), vec![g]);
    }

    #[test]
    fn positive_dimensional_embedded_component() {
        // (x^2, x*y): radical (x)
        let (x, y) = (v(2, 0), v(2, 1));
        let r = radical(&[x.pow(2), x.mul(&y)], 2).unwrap();
        assert!(same_ideal(&r, std::slice::from_ref(&x), 2));
        let (a, b, c) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = vec![a.pow(2).sub(&b.mul(&c)).pow(2), a.mul(&c).sub(&b.pow(2)).mul(&c)];
        let r = radical(&gens, 3).unwrap();
        for g in &r {
            assert!(radical_membership(g, &gens));
        }
        let rr = radical(&r, 3).unwrap();
        assert!(same_ideal(&r, &rr, 3));
    }
}
