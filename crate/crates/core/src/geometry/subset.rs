//! Implicit representations `(B, Q, U, f_1, …, f_k)` and their instances.

use crate::algebra::ideal::basis;
use crate::algebra::{radical, Poly, Ring, SpaceTag, Variable, Q};
use crate::schur::{apply_map, lr_shift, FunctorInstance, PolynomialFunctor, ShiftDecomposition};

use super::variety::AffineVariety;
use super::GeometryError;

/// `X(V) = ⋂_{φ ∈ Hom(V, K^u)} (id_B × Q(φ))^{-1} V(f_1, …, f_k)`.
/// Equations live on the base coordinates followed by the coordinates
/// `y.s.c.T` of `Q(K^u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSubsetRepr {
    pub base: AffineVariety,
    pub q: PolynomialFunctor,
    pub u_dim: usize,
    pub equations: Vec<Poly<Q>>,
}

/// Base variables followed by the coordinates of `Q(K^n)`.
pub fn instance_ring(base: &Ring, q: &PolynomialFunctor, n: usize, prefix: &str) -> Result<(Ring, FunctorInstance), GeometryError> {
    let inst = FunctorInstance::new(q, n)?;
    let mut ring = base.clone();
    for (name, w) in inst.names(prefix).into_iter().zip(inst.weights()) {
        ring.push(Variable::instance(name, w));
    }
    Ok((ring, inst))
}

impl ClosedSubsetRepr {
    pub fn new(
        base: AffineVariety,
        q: PolynomialFunctor,
        u_dim: usize,
        equations: Vec<Poly<Q>>,
    ) -> Result<ClosedSubsetRepr, GeometryError> {
        if !q.is_pure() {
            return Err(GeometryError::Schur(crate::schur::SchurError::NotPure(q.to_string())));
        }
        let x = ClosedSubsetRepr { base, q, u_dim, equations };
        let ring = x.ring()?;
        let weights = ring.weights();
        for f in &x.equations {
            if f.nvars() != ring.len() {
                return Err(GeometryError::Shape(format!("equation in {} variables, expected {}", f.nvars(), ring.len())));
            }
            if !f.is_homogeneous(&weights) {
                return Err(GeometryError::NotHomogeneous(f.display(&ring.names())));
            }
        }
        Ok(x)
    }

    /// Ring of the equations: base, then `Q(K^u)`.
    pub fn ring(&self) -> Result<Ring, GeometryError> {
        Ok(instance_ring(&self.base.ring, &self.q, self.u_dim, "y")?.0)
    }

    pub fn nbase(&self) -> usize {
        self.base.nvars()
    }
}

/// Generators of an ideal whose zero set is `X(K^n)`: the coefficients of
/// `f_i(b, Q(ψ)y)` in the entries of a generic `ψ: K^n → K^u`, together
/// with the equations of `B`. Returned as a reduced basis.
pub fn smear_unreduced(x: &ClosedSubsetRepr, n: usize) -> Result<Vec<Poly<Q>>, GeometryError> {
    let nb = x.nbase();
    let u = x.u_dim;
    let qu = FunctorInstance::new(&x.q, u)?;
    let qn = FunctorInstance::new(&x.q, n)?;
    let ny = qn.dim();
    let total = nb + ny + u * n;
    let zero = Poly::<Q>::zero(total);
    let psi: Vec<Vec<Poly<Q>>> = (0..u).map(|i| (0..n).map(|j| Poly::var(total, nb + ny + i * n + j)).collect()).collect();
    let m = apply_map(&x.q, &psi, n, &zero)?;
    let ys: Vec<Poly<Q>> = (0..ny).map(|j| Poly::var(total, nb + j)).collect();
    let mut images: Vec<Poly<Q>> = (0..nb).map(|b| Poly::var(total, b)).collect();
    images.extend(m.apply(&ys, &zero));
    debug_assert_eq!(images.len(), nb + qu.dim());
    let zvars: Vec<usize> = (nb + ny..total).collect();
    let keep: Vec<usize> = (0..nb + ny).collect();
    let mut gens: Vec<Poly<Q>> = x.base.gens.iter().map(|g| g.extend(ny)).collect();
    for f in &x.equations {
        let g = f.substitute_into(total, &images);
        for (_, c) in g.coefficients_in(&zvars) {
            gens.push(c.restrict(&keep).expect("z-free coefficient"));
        }
    }
    Ok(basis(&gens, nb + ny).polys())
}

/// Generators of the radical ideal of `X(K^n)` in the ring of base
/// coordinates followed by `Q(K^n)`.
pub fn smear(x: &ClosedSubsetRepr, n: usize) -> Result<Vec<Poly<Q>>, GeometryError> {
    let gens = smear_unreduced(x, n)?;
    let nv = x.nbase() + FunctorInstance::new(&x.q, n)?.dim();
    Ok(radical(&gens, nv)?)
}

/// `X(K^n)` as a variety.
pub fn instance_equations(x: &ClosedSubsetRepr, n: usize) -> Result<AffineVariety, GeometryError> {
    let (ring, _) = instance_ring(&x.base.ring, &x.q, n, "y")?;
    let gens = smear(x, n)?;
    Ok(AffineVariety::new(ring, gens).with_radical(true))
}

/// Whether a rational point of `B × Q(K^n)` lies in `X(K^n)`.
pub fn point_membership(x: &ClosedSubsetRepr, n: usize, point: &[Q]) -> Result<bool, GeometryError> {
    let gens = smear_unreduced(x, n)?;
    if let Some(g) = gens.first() {
        if g.nvars() != point.len() {
            return Err(GeometryError::Shape(format!("point has {} coordinates, expected {}", point.len(), g.nvars())));
        }
    }
    Ok(gens.iter().all(|g| crate::algebra::Field::is_zero(&g.eval(point))))
}

/// `Sh_{K^k} X` with its base `B × Q(K^k)` and the decomposition used.
#[derive(Clone, Debug)]
pub struct ShiftedSubset {
    pub subset: ClosedSubsetRepr,
    pub decomposition: ShiftDecomposition,
    /// Offset of the `Q(K^k)` coordinates in the new base ring.
    pub offset: usize,
}

fn fresh_prefix(ring: &Ring, stem: &str) -> String {
    let taken = |p: &str| ring.names().iter().any(|n| n.starts_with(&format!("{}.", p)));
    if !taken(stem) {
        return stem.to_string();
    }
    (1..).map(|i| format!("{}{}", stem, i)).find(|p| !taken(p)).expect("unbounded")
}

/// Equations of `(Sh_U X)(K^n) = X(U ⊕ K^n)` on `B × Q(U) × pure(K^n)`,
/// where `U = K^k` with `k = dec.k()`. Their zero set is exact; the ideal
/// need not be radical.
pub fn shifted_instance_equations(
    x: &ClosedSubsetRepr,
    dec: &ShiftDecomposition,
    n: usize,
) -> Result<Vec<Poly<Q>>, GeometryError> {
    let k = dec.k();
    let w = dec.witness(n)?;
    let big = smear_unreduced(x, k + n)?;
    let nb = x.nbase();
    let pure = FunctorInstance::new(dec.pure_part(), n)?;
    let nv = nb + dec.base_dim() + pure.dim();
    let cols: Vec<Poly<Q>> = (0..dec.base_dim() + pure.dim()).map(|c| Poly::var(nv, nb + c)).collect();
    let mut images: Vec<Poly<Q>> = (0..nb).map(|b| Poly::var(nv, b)).collect();
    for row in &w.matrix {
        let mut acc = Poly::zero(nv);
        for (c, v) in row.iter().enumerate() {
            if !crate::algebra::Field::is_zero(v) {
                acc = acc.add_scaled(&cols[c], v);
            }
        }
        images.push(acc);
    }
    let eqs: Vec<Poly<Q>> = big.iter().map(|f| f.substitute_into(nv, &images)).filter(|f| !f.is_zero()).collect();
    Ok(basis(&eqs, nv).polys())
}

/// `Sh_U X` for `U = K^k`, re-expressed on `(B × Q(U)) × pure` through the
/// shift decomposition. The equations of `X(K^{k+u})` suffice since every
/// `φ: U ⊕ V → K^u` factors through `id_U ⊕ φ|_V`.
pub fn shift_closed_subset(x: &ClosedSubsetRepr, k: usize) -> Result<ShiftedSubset, GeometryError> {
    let dec = lr_shift(&x.q, k)?;
    let eqs = shifted_instance_equations(x, &dec, x.u_dim)?;
    let qk = FunctorInstance::new(&x.q, k)?;
    let prefix = fresh_prefix(&x.base.ring, "c");
    let vars: Vec<Variable> = qk.names(&prefix).into_iter().map(|n| Variable::new(n, SpaceTag::Base, 0)).collect();
    let base = x.base.extend(vars);
    let subset = ClosedSubsetRepr::new(base, dec.pure_part().clone(), x.u_dim, eqs)?;
    Ok(ShiftedSubset { subset, decomposition: dec, offset: x.nbase() })
}
