//! Witness curves: extraction of a rational point of a feasible system, and
//! an exact Laurent re-substitution that checks a curve without reference
//! to the system it came from.

use std::collections::BTreeMap;

use crate::algebra::decompose::rational_roots;
use crate::algebra::ideal::basis;
use crate::algebra::{Field, Omega, Poly, Q};
use crate::geometry::{evaluate_morphism, Morphism};
use crate::schur::map_space;

use super::ansatz::AnsatzLayout;
use super::CertifyError;

/// A truncated curve `(a(t), γ(t))`; each row lists the coefficients of
/// `t^{−d1}, …, t^{d2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCurve {
    pub d1: u32,
    pub d2: u32,
    pub n1: u32,
    pub a: Vec<Vec<Omega>>,
    /// Against the basis of `Map(P', P)`.
    pub gamma: Vec<Vec<Omega>>,
}

impl WitnessCurve {
    pub(crate) fn from_point<F: Field>(layout: &AnsatzLayout, n1: u32, point: &[F], lift: impl Fn(&F) -> Omega) -> WitnessCurve {
        let row = |r: usize| layout.exponents().map(|e| lift(&point[layout.var(r, e)])).collect::<Vec<_>>();
        WitnessCurve {
            d1: layout.d1,
            d2: layout.d2,
            n1,
            a: (0..layout.base_rows).map(row).collect(),
            gamma: (layout.base_rows..layout.rows()).map(row).collect(),
        }
    }

    pub fn exponents(&self) -> std::ops::RangeInclusive<i32> {
        -(self.d1 as i32)..=self.d2 as i32
    }
}

/// A Laurent polynomial in `t` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<i32, Poly<Omega>>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Laurent {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn from_coefficients(nvars: usize, coeffs: impl IntoIterator<Item = (i32, Poly<Omega>)>) -> Laurent {
        let mut out = Laurent::zero(nvars);
        for (e, c) in coeffs {
            out.add_at(e, &c);
        }
        out
    }

    fn add_at(&mut self, e: i32, c: &Poly<Omega>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(|| Poly::zero(c.nvars()));
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_at(*e, c);
        }
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_at(e + f, &c.mul(d));
            }
        }
        out
    }

    pub fn scale(&self, c: &Poly<Omega>) -> Laurent {
        Laurent::from_coefficients(self.nvars, self.terms.iter().map(|(e, p)| (*e, p.mul(c))))
    }

    pub fn coefficient(&self, e: i32) -> Poly<Omega> {
        self.terms.get(&e).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn lowest(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn has_negative_part(&self) -> bool {
        self.lowest().is_some_and(|e| e < 0)
    }
}

/// `f(args)` for `f` over the rationals.
pub fn evaluate_laurent(f: &Poly<Q>, args: &[Laurent], nvars: usize) -> Laurent {
    let mut powers: Vec<Vec<Laurent>> = args.iter().map(|a| vec![Laurent::from_coefficients(nvars, [(0, Poly::one(nvars))]), a.clone()]).collect();
    let mut acc = Laurent::zero(nvars);
    for (e, c) in f.terms() {
        let mut t = Laurent::from_coefficients(nvars, [(0, Poly::constant(nvars, Omega::from_q(c)))]);
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&args[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// What re-substitution of a witness produced.
#[derive(Clone, Debug)]
pub struct WitnessCheck {
    /// `t⁰` coefficients of `α¹(a(t), ·) ∘ γ(t)` on `Q(K^d)`, as polynomials
    /// on `P'(K^d)`.
    pub fibre_limit: Vec<Poly<Omega>>,
    pub base_limit: Vec<Omega>,
    pub negative_part_zero: bool,
    pub limit_matches: bool,
    pub source_holds: bool,
    pub d: usize,
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        self.negative_part_zero && self.limit_matches && self.source_holds
    }
}

/// Expand `α ∘ (a(t), γ(t))` exactly at `K^d`, `d` the dimension of
/// `Map(P', Q)`, and compare with `α'` at the generic point, given by `b`
/// and the coefficients `alpha1` of `α'¹` there.
pub fn validate_witness(
    alpha: &Morphism,
    alpha_p: &Morphism,
    source_ideal: &[Poly<Q>],
    b: &[Omega],
    alpha1: &[Omega],
    w: &WitnessCurve,
) -> Result<WitnessCheck, CertifyError> {
    let outer = map_space(&alpha_p.p, &alpha.q)?;
    let inner = map_space(&alpha_p.p, &alpha.p)?;
    let d = outer.d();
    let np = outer.source().dim();
    let lift = |p: &Poly<Q>| p.map_coeffs(Omega::from_q);
    let row = |coeffs: &[Omega]| Laurent::from_coefficients(np, w.exponents().zip(coeffs).map(|(e, c)| (e, Poly::constant(np, c.clone()))));
    let a: Vec<Laurent> = w.a.iter().map(|r| row(r)).collect();
    if a.len() != alpha.a.nvars() || w.gamma.len() != inner.len() {
        return Err(CertifyError::Shape("witness rows do not match the morphisms".into()));
    }
    let inst = evaluate_morphism(alpha, d)?;
    let mut args = a.clone();
    let p_dim = inst.ring.len() - alpha.a.nvars();
    let elements: Vec<_> = (0..inner.len()).map(|i| inner.element_at(i, d)).collect::<Result<_, _>>()?;
    for coord in 0..p_dim {
        let mut acc = Laurent::zero(np);
        for (i, g) in w.gamma.iter().enumerate() {
            acc = acc.add(&row(g).scale(&lift(&elements[i][coord])));
        }
        args.push(acc);
    }
    let mut negative_part_zero = true;
    let mut limit_matches = true;
    let mut fibre_limit = Vec::new();
    for (j, f) in inst.fibre.iter().enumerate() {
        let l = evaluate_laurent(f, &args, np);
        negative_part_zero &= !l.has_negative_part();
        let want = (0..outer.len()).fold(Poly::zero(np), |acc, i| acc.add(&lift(&outer.element(i)[j]).scale(&alpha1[i])));
        let got = l.coefficient(0);
        limit_matches &= got == want;
        fibre_limit.push(got);
    }
    let mut base_limit = Vec::new();
    for (f, want) in alpha.alpha0.iter().zip(b) {
        let l = evaluate_laurent(f, &a, np);
        negative_part_zero &= !l.has_negative_part();
        let got = l.coefficient(0).constant_coeff();
        limit_matches &= l.coefficient(0).is_constant() && &got == want;
        base_limit.push(got);
    }
    let mut source_holds = true;
    for f in source_ideal {
        let l = evaluate_laurent(f, &a, np);
        source_holds &= l.lowest().is_none_or(|e| e >= w.n1 as i32);
    }
    Ok(WitnessCheck { fibre_limit, base_limit, negative_part_zero, limit_matches, source_holds, d })
}

const TRIALS: [i64; 5] = [0, 1, -1, 2, -2];

fn fix<F: Field>(p: &Poly<F>, v: usize, value: &F) -> Poly<F> {
    let terms = p.terms().iter().map(|(e, c)| {
        let mut e = e.clone();
        let k = std::mem::take(&mut e[v]);
        let mut c = c.clone();
        for _ in 0..k {
            c = c.mul(value);
        }
        (e, c)
    });
    Poly::from_terms(p.nvars(), terms)
}

fn univariate_roots<F: Field>(p: &Poly<F>, v: usize) -> Vec<F> {
    if let Some(q) = p.terms().iter().map(|(e, c)| c.to_q().map(|c| (e.clone(), c))).collect::<Option<Vec<_>>>() {
        return rational_roots(&Poly::from_terms(p.nvars(), q), v).iter().map(F::from_q).collect();
    }
    if p.degree_in(v) == 1 {
        let lead = p.terms().iter().find(|(e, _)| e[v] == 1).map(|(_, c)| c.clone()).unwrap();
        let rest = p.terms().iter().find(|(e, _)| e[v] == 0).map(|(_, c)| c.clone()).unwrap_or_else(F::zero);
        return lead.inv().map(|i| vec![rest.neg().mul(&i)]).unwrap_or_default();
    }
    Vec::new()
}

struct Extractor<'a> {
    nvars: usize,
    order: &'a [usize],
    budget: usize,
    calls: usize,
}

impl Extractor<'_> {
    fn search<F: Field>(&mut self, polys: Vec<Poly<F>>, assigned: &mut Vec<Option<F>>) -> bool {
        self.calls += 1;
        if self.calls > self.budget {
            return false;
        }
        let gb = basis(&polys, self.nvars);
        if gb.is_unit() {
            return false;
        }
        let polys = gb.polys();
        if polys.is_empty() {
            return true;
        }
        let forced = polys.iter().find_map(|p| match p.support()[..] {
            [v] => Some((v, univariate_roots(p, v))),
            _ => None,
        });
        let (v, values) = match forced {
            Some(f) => f,
            None => {
                let live: Vec<usize> = polys.iter().flat_map(|p| p.support()).collect();
                let v = *self.order.iter().find(|v| assigned[**v].is_none() && live.contains(v)).expect("a live variable");
                (v, TRIALS.iter().map(|&x| F::from_i64(x)).collect())
            }
        };
        for value in values {
            let next: Vec<Poly<F>> = polys.iter().map(|p| fix(p, v, &value)).collect();
            assigned[v] = Some(value);
            if self.search(next, assigned) {
                return true;
            }
            assigned[v] = None;
            if self.calls > self.budget {
                return false;
            }
        }
        false
    }
}

/// A point of `V(system)` with coordinates in the coefficient field, found
/// by depth-first trial of small integers and rational roots of univariate
/// basis elements. Variables are tried in `order`; unconstrained ones are
/// set to zero. At most `budget` Gröbner bases are computed.
pub fn extract_point<F: Field>(system: &[Poly<F>], nvars: usize, order: &[usize], budget: usize) -> Option<Vec<F>> {
    let mut assigned: Vec<Option<F>> = vec![None; nvars];
    let mut ex = Extractor { nvars, order, budget, calls: 0 };
    if !ex.search(system.to_vec(), &mut assigned) {
        return None;
    }
    Some(assigned.into_iter().map(|v| v.unwrap_or_else(F::zero)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_of_small_systems() {
        let c = Poly::<Q>::var(1, 0);
        let one = Poly::<Q>::one(1);
        assert_eq!(extract_point(&[c.mul(&c).sub(&one)], 1, &[0], 50), Some(vec![Q::from(-1)]));
        assert_eq!(extract_point(&[c.clone(), c.sub(&one)], 1, &[0], 50), None);
        // feasible, but only over an extension
        assert_eq!(extract_point(&[c.mul(&c).sub(&Poly::constant(1, Q::from(2)))], 1, &[0], 50), None);
    }

    #[test]
    fn trial_values_and_backtracking() {
        // x·y = 1, x + y = 2 has the unique point (1, 1); y free after x
        let (x, y) = (Poly::<Q>::var(2, 0), Poly::<Q>::var(2, 1));
        let sys = [x.mul(&y).sub(&Poly::one(2)), x.add(&y).sub(&Poly::constant(2, Q::from(2)))];
        assert_eq!(extract_point(&sys, 2, &[0, 1], 50), Some(vec![Q::from(1), Q::from(1)]));
        // x·y = 1 alone: x = 0 fails, x = 1 works
        let p = extract_point(&sys[..1], 2, &[0, 1], 50).unwrap();
        assert!(sys[0].eval(&p).is_zero());
    }

    #[test]
    fn laurent_products() {
        let t = |e: i32, c: i64| Laurent::from_coefficients(0, [(e, Poly::constant(0, Omega::from_i64(c)))]);
        // (t⁻¹ + t²)(t⁻¹ − t²) = t⁻² − t⁴
        let p = t(-1, 1).add(&t(2, 1)).mul(&t(-1, 1).add(&t(2, -1)));
        assert_eq!(p.lowest(), Some(-2));
        assert!(p.coefficient(1).is_zero());
        assert_eq!(p.coefficient(4).constant_coeff(), Omega::from_i64(-1));
    }
}
