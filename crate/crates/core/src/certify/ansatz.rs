//! The polynomial system whose solutions are truncated witness curves.
//!
//! Unknowns are the Laurent coefficients `c.i.e` of the curve: first one
//! row per ambient coordinate of `A`, then one row per basis element of
//! `Map(P', P)`, each row indexed by the exponent `e ∈ [−d1, d2]`. The
//! `t`-valuation of a monomial in the unknowns is the weighted sum of the
//! exponents, so Laurent expansion is grouping by weight.

use std::collections::BTreeMap;

use crate::algebra::{Field, Poly, Q};
use crate::geometry::{evaluate_morphism, Morphism};
use crate::schur::map_space;

use super::CertifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzLayout {
    /// Ambient coordinates of the source variety.
    pub base_rows: usize,
    /// Dimension of `Map(P', P)`.
    pub gamma_rows: usize,
    pub d1: u32,
    pub d2: u32,
}

impl AnsatzLayout {
    pub fn width(&self) -> usize {
        (self.d1 + self.d2 + 1) as usize
    }

    pub fn rows(&self) -> usize {
        self.base_rows + self.gamma_rows
    }

    pub fn nvars(&self) -> usize {
        self.rows() * self.width()
    }

    pub fn var(&self, row: usize, e: i32) -> usize {
        debug_assert!(e >= -(self.d1 as i32) && e <= self.d2 as i32);
        (e + self.d1 as i32) as usize * self.rows() + row
    }

    pub fn row_of(&self, v: usize) -> usize {
        v % self.rows()
    }

    pub fn exponent(&self, v: usize) -> i32 {
        (v / self.rows()) as i32 - self.d1 as i32
    }

    pub fn exponents(&self) -> std::ops::RangeInclusive<i32> {
        -(self.d1 as i32)..=self.d2 as i32
    }

    /// `c.i.e` with 1-based rows.
    pub fn names(&self) -> Vec<String> {
        (0..self.nvars()).map(|v| format!("c.{}.{}", self.row_of(v) + 1, self.exponent(v))).collect()
    }

    /// `Σ_e c.row.e`, in a ring with `extra` further variables.
    fn series(&self, row: usize, extra: usize) -> Poly<Q> {
        let n = self.nvars() + extra;
        self.exponents().fold(Poly::zero(n), |acc, e| acc.add(&Poly::var(n, self.var(row, e))))
    }

    fn weight(&self, exps: &[u32]) -> i64 {
        exps.iter().take(self.nvars()).enumerate().map(|(v, &k)| k as i64 * self.exponent(v) as i64).sum()
    }

    /// Split a polynomial in the unknowns by `t`-valuation.
    pub fn graded(&self, p: &Poly<Q>) -> BTreeMap<i64, Poly<Q>> {
        let mut parts: BTreeMap<i64, Vec<(Vec<u32>, Q)>> = BTreeMap::new();
        for (e, c) in p.terms() {
            parts.entry(self.weight(e)).or_default().push((e.clone(), c.clone()));
        }
        parts.into_iter().map(|(w, t)| (w, Poly::from_terms(p.nvars(), t))).collect()
    }
}

/// `f(a(t)) ≡ 0 mod t^{n1}` for the generators of the source component.
pub fn source_conditions(layout: &AnsatzLayout, ideal: &[Poly<Q>], n1: u32) -> Vec<Poly<Q>> {
    if n1 == 0 {
        return Vec::new();
    }
    let images: Vec<Poly<Q>> = (0..layout.base_rows).map(|r| layout.series(r, 0)).collect();
    let mut out = Vec::new();
    for f in ideal {
        let sub = f.substitute_into(layout.nvars(), &images);
        out.extend(layout.graded(&sub).into_iter().filter(|(w, _)| *w < n1 as i64).map(|(_, p)| p));
    }
    out
}

/// Negative part and constant term of a graded expansion against `target`.
fn limit_equations<F: Field>(graded: BTreeMap<i64, Poly<Q>>, target: &F, nvars: usize, out: &mut Vec<Poly<F>>) {
    let mut constant = Poly::<F>::constant(nvars, target.neg());
    for (w, p) in graded {
        if w < 0 {
            out.push(p.map_coeffs(F::from_q));
        } else if w == 0 {
            constant = constant.add(&p.map_coeffs(F::from_q));
        }
    }
    out.push(constant);
}

/// `lim α⁰(a(t)) = b`.
pub fn base_conditions<F: Field>(layout: &AnsatzLayout, alpha: &Morphism, b: &[F]) -> Vec<Poly<F>> {
    let images: Vec<Poly<Q>> = (0..layout.base_rows).map(|r| layout.series(r, 0)).collect();
    let mut out = Vec::new();
    for (f, target) in alpha.alpha0.iter().zip(b) {
        let sub = f.substitute_into(layout.nvars(), &images);
        limit_equations(layout.graded(&sub), target, layout.nvars(), &mut out);
    }
    out.retain(|p| !p.is_zero());
    out
}

/// `lim α¹(a(t), ·) ∘ γ(t) = α'¹`, compared coordinate by coordinate in
/// the basis of `Map(P', Q)` through its pivot functionals.
pub fn fibre_conditions<F: Field>(
    layout: &AnsatzLayout,
    alpha: &Morphism,
    alpha_p: &Morphism,
    target: &[F],
) -> Result<Vec<Poly<F>>, CertifyError> {
    let outer = map_space(&alpha_p.p, &alpha.q)?;
    let inner = map_space(&alpha_p.p, &alpha.p)?;
    let d = outer.d();
    let src = outer.source().dim();
    let nc = layout.nvars();
    let nv = nc + src;
    let inst = evaluate_morphism(alpha, d)?;
    let k = alpha.a.nvars();
    let mut images: Vec<Poly<Q>> = (0..k).map(|r| layout.series(r, src)).collect();
    let shift: Vec<usize> = (0..src).map(|v| nc + v).collect();
    let gammas: Vec<std::sync::Arc<Vec<Poly<Q>>>> = (0..inner.len()).map(|i| inner.element_at(i, d)).collect::<Result<_, _>>()?;
    let p_dim = inst.ring.len() - k;
    for coord in 0..p_dim {
        let mut img = Poly::zero(nv);
        for (i, g) in gammas.iter().enumerate() {
            let e = &g[coord];
            if !e.is_zero() {
                img = img.add(&layout.series(k + i, src).mul(&e.rename(nv, &shift)));
            }
        }
        images.push(img);
    }
    let mut out = Vec::new();
    for ((j, mono), want) in outer.pivots().iter().zip(target) {
        let composite = inst.fibre[*j].substitute_into(nv, &images);
        let terms = composite.terms().iter().filter(|(e, _)| e[nc..] == mono[..]).map(|(e, c)| (e[..nc].to_vec(), c.clone()));
        let coeff = Poly::from_terms(nc, terms);
        limit_equations(layout.graded(&coeff), want, nc, &mut out);
    }
    out.retain(|p| !p.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::basis;
    use crate::corpus::{symmetric_power_map, waring};

    #[test]
    fn layout_indexing() {
        let l = AnsatzLayout { base_rows: 1, gamma_rows: 2, d1: 1, d2: 2 };
        assert_eq!(l.nvars(), 12);
        assert_eq!(l.var(2, -1), 2);
        assert_eq!((l.row_of(7), l.exponent(7)), (1, 1));
        assert_eq!(l.names()[11], "c.3.2");
    }

    /// Coordinates in `Map(2S¹, 2S¹)` of `(u, v) ↦ (x u + y v, z u + w v)`.
    fn inner_coords(alpha: &Morphism, m: [i64; 4]) -> Vec<Q> {
        let inner = map_space(&alpha.p, &alpha.p).unwrap();
        let (u, v) = (Poly::<Q>::var(2, 0), Poly::<Q>::var(2, 1));
        let lin = |a: i64, b: i64| u.scale(&Q::from(a)).add(&v.scale(&Q::from(b)));
        let map = vec![lin(m[0], m[1]), lin(m[2], m[3])];
        assert_eq!(inner.d(), 1);
        inner.coefficients(&map, 0).unwrap().iter().map(|c| c.constant_coeff()).collect()
    }

    #[test]
    fn known_curve_solves_the_cubic_system() {
        let alpha = waring(2, 3).unwrap();
        let alpha_p = symmetric_power_map(2, 3, &[(vec![2, 1], Q::from(6))]).unwrap();
        let layout = AnsatzLayout { base_rows: 0, gamma_rows: 4, d1: 1, d2: 2 };
        let target: Vec<Q> = alpha_p.alpha1.iter().map(|c| c.constant_coeff()).collect();
        let eqs = fibre_conditions(&layout, &alpha, &alpha_p, &target).unwrap();
        // γ(t) = (t²v + t⁻¹u, t²v − t⁻¹u)
        let low = inner_coords(&alpha, [1, 0, -1, 0]);
        let high = inner_coords(&alpha, [0, 1, 0, 1]);
        let mut point = vec![Q::from(0); layout.nvars()];
        for i in 0..4 {
            point[layout.var(i, -1)] = low[i].clone();
            point[layout.var(i, 2)] = high[i].clone();
        }
        assert!(!eqs.is_empty());
        for e in &eqs {
            assert!(e.eval(&point).is_zero());
        }
        // the constant curve γ = (u, v) does not reach 6u²v
        let mut flat = vec![Q::from(0); layout.nvars()];
        for (i, c) in inner_coords(&alpha, [1, 0, 0, 1]).into_iter().enumerate() {
            flat[layout.var(i, 0)] = c;
        }
        assert!(eqs.iter().any(|e| !e.eval(&flat).is_zero()));
    }

    #[test]
    fn identity_solves_the_self_system() {
        let alpha = waring(2, 3).unwrap();
        let layout = AnsatzLayout { base_rows: 0, gamma_rows: 4, d1: 0, d2: 0 };
        let target: Vec<Q> = alpha.alpha1.iter().map(|c| c.constant_coeff()).collect();
        let eqs = fibre_conditions(&layout, &alpha, &alpha, &target).unwrap();
        let point = inner_coords(&alpha, [1, 0, 0, 1]);
        assert!(eqs.iter().all(|e| e.eval(&point).is_zero()));
        assert!(!basis(&eqs, layout.nvars()).is_unit());
    }
}
