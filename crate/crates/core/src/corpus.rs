//! Standard morphisms used in examples and tests.

use crate::algebra::{Field, Poly, Q};
use crate::geometry::{morphism_from_instance, AffineVariety, GeometryError, Morphism};
use crate::schur::{map_space, FunctorInstance, Partition, PolynomialFunctor};

fn multinomial(exps: &[u32]) -> Q {
    let mut out = Q::from(1);
    let mut total = 0i64;
    for &e in exps {
        for j in 1..=e as i64 {
            total += 1;
            out = out.mul(&Q::new(total, j));
        }
    }
    out
}

/// `(v_1, …, v_r) ↦ Σ_k c_k v^{d_k}` from `r·S¹` to `S^k`, where `v^d` is
/// the coefficient of `s^d` in `(Σ s_i v_i)^k` divided by the multinomial
/// coefficient, and `w ↦ w^k` is the canonical generator of
/// `Map(S¹, S^k)`.
pub fn symmetric_power_map(r: usize, k: u32, terms: &[(Vec<u32>, Q)]) -> Result<Morphism, GeometryError> {
    let p = PolynomialFunctor::from_summands([(Partition::row(1), r as u32)]);
    let q = PolynomialFunctor::sym(k);
    let pt = AffineVariety::point();
    let d = map_space(&p, &q)?.d();
    let gen = map_space(&PolynomialFunctor::sym(1), &q)?;
    let power = gen.element_at(0, d)?;
    let src = FunctorInstance::new(&p, d)?;
    let nv = r + src.dim();
    // w_j = Σ_i s_i v_{i,j}
    let w: Vec<Poly<Q>> = (0..d).map(|j| (0..r).fold(Poly::zero(nv), |acc, i| acc.add(&Poly::var(nv, i).mul(&Poly::var(nv, r + i * d + j))))).collect();
    let expanded: Vec<Poly<Q>> = power.iter().map(|f| f.substitute_into(nv, &w)).collect();
    let keep: Vec<usize> = (r..nv).collect();
    let mut map = vec![Poly::zero(src.dim()); expanded.len()];
    for (exps, c) in terms {
        if exps.len() != r || exps.iter().sum::<u32>() != k {
            return Err(GeometryError::Shape(format!("monomial {:?} is not of degree {} in {} vectors", exps, k, r)));
        }
        let scale = c.div(&multinomial(exps)).expect("nonzero multinomial");
        for (m, f) in map.iter_mut().zip(&expanded) {
            let part = f.terms().iter().filter(|(e, _)| e[..r] == exps[..]).map(|(e, c)| {
                let mut e = e.clone();
                e[..r].iter_mut().for_each(|x| *x = 0);
                (e, c.clone())
            });
            let part = Poly::from_terms(nv, part).restrict(&keep).expect("s-free");
            *m = m.add(&part.scale(&scale));
        }
    }
    morphism_from_instance(&pt, &p, &pt, &q, d, &map)
}

/// `(v_1, …, v_r) ↦ v_1^k + ⋯ + v_r^k`.
pub fn waring(r: usize, k: u32) -> Result<Morphism, GeometryError> {
    let terms: Vec<(Vec<u32>, Q)> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = k;
            (e, Q::from(1))
        })
        .collect();
    symmetric_power_map(r, k, &terms)
}

/// `v ↦ v²` from `S¹` to `S²`.
pub fn veronese() -> Result<Morphism, GeometryError> {
    symmetric_power_map(1, 2, &[(vec![2], Q::from(1))])
}

/// `(q_1, …, q_k, v_1, …, v_k) ↦ q_1 v_1 + ⋯ + q_k v_k` from
/// `k·S² ⊕ k·S¹` to `S³`. The product `S² × S¹ → S³` spans the bilinear
/// part of the map space, so it is read off the basis.
pub fn q_rank(k: usize) -> Result<Morphism, GeometryError> {
    let p = PolynomialFunctor::from_summands([(Partition::row(2), k as u32), (Partition::row(1), k as u32)]);
    let q = PolynomialFunctor::sym(3);
    let pt = AffineVariety::point();
    let basis = map_space(&p, &q)?;
    let d = basis.d();
    let src = FunctorInstance::new(&p, d)?;
    // (summand degree, copy) of each source coordinate
    let owner: Vec<(usize, usize)> = src.coords().iter().map(|c| (p.partition(c.summand).size() as usize, c.copy)).collect();
    let mut map = vec![Poly::zero(src.dim()); basis.target().dim()];
    let mut found = vec![false; k];
    for i in 0..basis.len() {
        let elem = basis.element_at(i, d)?;
        let mut pair = None;
        let bilinear = elem.iter().flat_map(|f| f.terms()).all(|(e, _)| {
            let mut deg = [(0u32, None), (0u32, None)];
            for (v, &x) in e.iter().enumerate() {
                if x > 0 {
                    let (s, c) = owner[v];
                    let slot = &mut deg[s - 1];
                    slot.0 += x;
                    if slot.1.is_some_and(|o| o != c) {
                        return false;
                    }
                    slot.1 = Some(c);
                }
            }
            match (deg, pair) {
                ([(1, Some(a)), (1, Some(b))], None) if a == b => {
                    pair = Some(a);
                    true
                }
                ([(1, Some(a)), (1, Some(b))], Some(c)) => a == b && a == c,
                _ => false,
            }
        });
        if let (true, Some(j)) = (bilinear, pair) {
            found[j] = true;
            for (m, f) in map.iter_mut().zip(elem.iter()) {
                *m = m.add(f);
            }
        }
    }
    if found.iter().any(|f| !f) {
        return Err(GeometryError::Shape("no product map in the basis".into()));
    }
    morphism_from_instance(&pt, &p, &pt, &q, d, &map)
}
