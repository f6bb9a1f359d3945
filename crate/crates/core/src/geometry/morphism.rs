//! Morphisms `A × P → B × Q` stored as `(α⁰, α¹)`: a polynomial map
//! `A → B` and coefficients over `K[A]` against the basis of `Map(P, Q)`.

use crate::algebra::ideal::{basis, eliminate_and_restrict};
use crate::algebra::linalg::rank;
use crate::algebra::{Poly, Ring, Q};
use crate::schur::{map_space, validate_equivariance, FunctorInstance, MapSpaceBasis, PolynomialFunctor};

use super::subset::instance_ring;
use super::variety::AffineVariety;
use super::GeometryError;

#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub a: AffineVariety,
    pub p: PolynomialFunctor,
    pub b: AffineVariety,
    pub q: PolynomialFunctor,
    /// One polynomial on `A` per coordinate of `B`.
    pub alpha0: Vec<Poly<Q>>,
    /// One polynomial on `A` per element of the basis of `Map(P, Q)`.
    pub alpha1: Vec<Poly<Q>>,
}

/// A morphism evaluated at `V = K^n`: polynomials on `A × P(K^n)` giving
/// the coordinates of `B` and of `Q(K^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceMap {
    pub n: usize,
    pub ring: Ring,
    pub base: Vec<Poly<Q>>,
    pub fibre: Vec<Poly<Q>>,
}

impl InstanceMap {
    pub fn components(&self) -> Vec<Poly<Q>> {
        self.base.iter().chain(&self.fibre).cloned().collect()
    }
}

impl Morphism {
    pub fn basis(&self) -> Result<std::sync::Arc<MapSpaceBasis>, GeometryError> {
        Ok(map_space(&self.p, &self.q)?)
    }

    /// The identity of `B × Q`.
    pub fn identity(b: &AffineVariety, q: &PolynomialFunctor) -> Result<Morphism, GeometryError> {
        let basis = map_space(q, q)?;
        let k = b.nvars();
        let nv = k + basis.source().dim();
        let map: Vec<Poly<Q>> = (0..nv).map(|v| Poly::var(nv, v)).collect();
        morphism_from_instance(b, q, b, q, basis.d(), &map)
    }

    /// `α` evaluated at `K^d` for the map-space dimension `d`.
    pub fn at_basis_dimension(&self) -> Result<InstanceMap, GeometryError> {
        evaluate_morphism(self, self.basis()?.d())
    }
}

fn source_ring(a: &AffineVariety, p: &PolynomialFunctor, n: usize) -> Result<(Ring, FunctorInstance), GeometryError> {
    instance_ring(&a.ring, p, n, "x")
}

/// Restrict a map given at `K^{d'}` to `K^d` for `d ≤ d'`, along the
/// coordinate inclusion and projection.
fn restrict_map(
    fibre: &[Poly<Q>],
    k: usize,
    src_big: &FunctorInstance,
    tgt_big: &FunctorInstance,
    src: &FunctorInstance,
    tgt: &FunctorInstance,
) -> Vec<Poly<Q>> {
    let d = src.n();
    let nv = k + src.dim();
    let images: Vec<Poly<Q>> = (0..k)
        .map(|v| Poly::var(nv, v))
        .chain(src_big.coords().iter().map(|c| match src.index_of(c) {
            Some(i) if c.tableau.letters().iter().all(|&l| (l as usize) <= d) => Poly::var(nv, k + i),
            _ => Poly::zero(nv),
        }))
        .collect();
    tgt.coords()
        .iter()
        .map(|c| {
            let j = tgt_big.index_of(c).expect("target coordinate");
            fibre[j].substitute_into(nv, &images)
        })
        .collect()
}

/// Canonicalise an explicit map at `K^d`, given as polynomials on
/// `A × P(K^d)` for the coordinates of `B` followed by those of `Q(K^d)`.
pub fn morphism_from_instance(
    a: &AffineVariety,
    p: &PolynomialFunctor,
    b: &AffineVariety,
    q: &PolynomialFunctor,
    d: usize,
    map: &[Poly<Q>],
) -> Result<Morphism, GeometryError> {
    let basis = map_space(p, q)?;
    if d < basis.d() {
        return Err(GeometryError::Shape(format!("maps must be given at dimension at least {}", basis.d())));
    }
    let k = a.nvars();
    let src = FunctorInstance::new(p, d)?;
    let tgt = FunctorInstance::new(q, d)?;
    let nv = k + src.dim();
    if map.len() != b.nvars() + tgt.dim() {
        return Err(GeometryError::Shape(format!("expected {} components, got {}", b.nvars() + tgt.dim(), map.len())));
    }
    if map.iter().any(|f| f.nvars() != nv) {
        return Err(GeometryError::Shape(format!("components must live in {} variables", nv)));
    }
    let (base, fibre) = map.split_at(b.nvars());
    let mut alpha0 = Vec::with_capacity(base.len());
    for f in base {
        let r = f.restrict(&(0..k).collect::<Vec<_>>()).ok_or_else(|| {
            GeometryError::NotAMorphism("base component depends on the functor coordinates".into())
        })?;
        alpha0.push(r);
    }
    if !validate_equivariance(fibre, k, &src, &tgt) {
        return Err(GeometryError::NotAMorphism("equivariance residual is nonzero".into()));
    }
    let fibre_d = if d == basis.d() {
        fibre.to_vec()
    } else {
        restrict_map(fibre, k, &src, &tgt, basis.source(), basis.target())
    };
    let alpha1 = basis
        .coefficients(&fibre_d, k)
        .ok_or_else(|| GeometryError::NotAMorphism("map is not in the span of Map(P, Q)".into()))?;
    for g in &b.gens {
        let pulled = g.substitute_into(k, &alpha0);
        if !a.vanishes(&pulled) {
            return Err(GeometryError::Codomain(g.display(&b.names())));
        }
    }
    Ok(Morphism { a: a.clone(), p: p.clone(), b: b.clone(), q: q.clone(), alpha0, alpha1 })
}

/// `α` at `V = K^n`.
pub fn evaluate_morphism(m: &Morphism, n: usize) -> Result<InstanceMap, GeometryError> {
    let basis = m.basis()?;
    let k = m.a.nvars();
    let (ring, src) = source_ring(&m.a, &m.p, n)?;
    let tgt = FunctorInstance::new(&m.q, n)?;
    let nv = k + src.dim();
    let shift: Vec<usize> = (0..src.dim()).map(|v| k + v).collect();
    let mut fibre = vec![Poly::zero(nv); tgt.dim()];
    for (i, c) in m.alpha1.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.extend(src.dim());
        for (f, e) in fibre.iter_mut().zip(basis.element_at(i, n)?.iter()) {
            if !e.is_zero() {
                *f = f.add(&c.mul(&e.rename(nv, &shift)));
            }
        }
    }
    let base = m.alpha0.iter().map(|f| f.extend(src.dim())).collect();
    Ok(InstanceMap { n, ring, base, fibre })
}

fn sample_point(nv: usize) -> Vec<Q> {
    (0..nv).map(|i| Q::from(((i * 7 + 3) % 11) as i64 - 5 + (i / 11) as i64)).collect()
}

/// Whether the differential of the map has full rank `target` at a sample
/// point; then the image of an affine space is dense.
fn dominant_at_sample(components: &[Poly<Q>], nv: usize) -> bool {
    let pt = sample_point(nv);
    let jac: Vec<Vec<Q>> = components.iter().map(|f| (0..nv).map(|v| f.derivative(v).eval(&pt)).collect()).collect();
    !components.is_empty() && rank(&jac) == components.len()
}

/// Radical equations of the closure of `α(A × P(K^n))` on the base
/// coordinates followed by `y.s.c.T` on `Q(K^n)`.
pub fn image_closure_instance(m: &Morphism, n: usize) -> Result<AffineVariety, GeometryError> {
    let eval = evaluate_morphism(m, n)?;
    let (target_ring, tgt) = instance_ring(&m.b.ring, &m.q, n, "y")?;
    let ns = eval.ring.len();
    let nt = target_ring.len();
    let comps = eval.components();
    let prime = m.a.certified_prime || m.a.gens.is_empty();
    if m.a.gens.is_empty() && dominant_at_sample(&comps, ns) {
        return Ok(AffineVariety::new(target_ring, Vec::new()).with_prime(true));
    }
    let total = ns + nt;
    let mut gens: Vec<Poly<Q>> = m.a.gens.iter().map(|g| g.extend(total - m.a.nvars())).collect();
    for (j, f) in comps.iter().enumerate() {
        gens.push(Poly::var(total, ns + j).sub(&f.extend(nt)));
    }
    let drop: Vec<usize> = (0..ns).collect();
    let elim = eliminate_and_restrict(&gens, &drop, total);
    let out = if prime { basis(&elim, nt).polys() } else { crate::algebra::radical(&elim, nt)? };
    debug_assert_eq!(tgt.dim() + m.b.nvars(), nt);
    Ok(AffineVariety::new(target_ring, out).with_radical(true).with_prime(prime))
}
