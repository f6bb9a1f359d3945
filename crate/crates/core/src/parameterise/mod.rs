//! From equations `(B, Q, U, f_1, …, f_k)` to a parameterisation
//! `β: A × P → B × Q` whose image is exactly the closed subset.
//!
//! The output is a list of components, each a morphism from its own
//! `A_i × P_i`; the union of their images is the subset.

mod trace;

use std::collections::HashMap;

use thiserror::Error;

pub use trace::{fingerprint, Branch, RecursionTrace, TraceEntry};

use crate::algebra::ideal::{basis, eliminate};
use crate::algebra::{is_trivial, radical, AlgebraError, GroebnerBasis, MonomialOrder, Poly, Q};
use crate::geometry::{
    evaluate_morphism, localize, morphism_from_instance, shift_closed_subset, shifted_instance_equations, smear,
    AffineVariety, ClosedSubsetRepr, GeometryError, Morphism,
};
use crate::schur::{
    lr_shift, map_space, CopyIndex, FunctorInstance, PolynomialFunctor, SchurError, ShiftDecomposition, TopSplit,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("coordinate {0} is not a polynomial function on the localised shift")]
    Embedding(String),
    #[error("termination invariant violated: {0}")]
    Termination(String),
}

impl From<AlgebraError> for ParamError {
    fn from(e: AlgebraError) -> Self {
        ParamError::Geometry(e.into())
    }
}

impl From<SchurError> for ParamError {
    fn from(e: SchurError) -> Self {
        ParamError::Geometry(e.into())
    }
}

#[derive(Clone, Debug)]
pub struct ParamResult {
    pub components: Vec<Morphism>,
    pub trace: RecursionTrace,
}

impl ParamResult {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `P = ⊕ P_i`; each component ignores the other summands.
    pub fn functor(&self) -> PolynomialFunctor {
        self.components.iter().fold(PolynomialFunctor::zero(), |acc, m| acc.direct_sum(&m.p).0)
    }
}

pub fn parameterise(x: &ClosedSubsetRepr) -> Result<ParamResult, ParamError> {
    let mut trace = RecursionTrace::default();
    let components = run(x, &mut trace, None)?;
    trace.check().map_err(ParamError::Termination)?;
    Ok(ParamResult { components, trace })
}

/// Coordinates of `Q(U)` split as `Q'(U)` and `R(U)`, as indices in the
/// ring `B × Q(U)`.
struct Layout {
    nb: usize,
    nv: usize,
    rest: Vec<usize>,
    xs: Vec<usize>,
}

impl Layout {
    fn new(x: &ClosedSubsetRepr, split: &TopSplit) -> Result<Layout, ParamError> {
        let nb = x.nbase();
        let qu = FunctorInstance::new(&x.q, x.u_dim)?;
        let rest_u = FunctorInstance::new(&split.rest, x.u_dim)?;
        let rest = rest_u.embedding_into(&qu, &split.rest_pos).into_iter().map(|i| nb + i).collect();
        let xs = qu.copy_range(split.r_pos).map(|r| r.map(|i| nb + i).collect()).unwrap_or_default();
        Ok(Layout { nb, nv: nb + qu.dim(), rest, xs })
    }

    fn keep(&self) -> Vec<usize> {
        (0..self.nb).chain(self.rest.iter().copied()).collect()
    }
}

fn run(x: &ClosedSubsetRepr, trace: &mut RecursionTrace, parent: Option<(usize, Branch)>) -> Result<Vec<Morphism>, ParamError> {
    let node = trace.enter(parent, &x.q);
    if x.q.is_zero() {
        trace.take(node, Branch::Exit1);
        return exit_at_base(x, trace, node);
    }

    let split = x.q.top_irreducible_summand()?;
    trace.note(node, 2, format!("R = S{}, Q' = {}", split.r, split.rest));
    let lay = Layout::new(x, &split)?;

    let smeared = smear(x, x.u_dim)?;
    let elim = eliminate(&smeared, &lay.xs, lay.nv);
    let keep = lay.keep();
    let g_small: Vec<Poly<Q>> = elim.iter().map(|p| p.restrict(&keep).expect("eliminated")).collect();
    let g_small = basis(&g_small, keep.len()).polys();
    let g_full = basis(&elim, lay.nv);

    let reduced: Vec<Poly<Q>> = x.equations.iter().map(|f| g_full.normal_form(f)).collect();
    let first = reduced.iter().position(|f| !f.is_zero());
    let x_degree = first.map(|i| reduced[i].degree_in_set(&lay.xs));
    trace.record_projection(node, g_small.clone(), x_degree);

    let Some(i) = first else {
        trace.take(node, Branch::Exit2);
        trace.note(node, 5, "all equations vanish on X'(U)".into());
        let child = ClosedSubsetRepr::new(x.base.clone(), split.rest.clone(), x.u_dim, g_small)?;
        let sub = run(&child, trace, Some((node, Branch::Exit2)))?;
        return sub.iter().map(|m| times_identity(m, x, &split)).collect();
    };

    let fi = &reduced[i];
    let j = *lay.xs.iter().find(|&&v| fi.uses_var(v)).expect("a surviving equation involves R(U)");
    let h = fi.derivative(j);
    trace.note(node, 7, format!("h = d f_{} / d x_{}", i + 1, j - lay.nb));

    trace.take(node, Branch::DerivativeCall);
    let mut eqs = vec![h.clone()];
    eqs.extend(reduced.iter().filter(|f| !f.is_zero()).cloned());
    eqs.extend(g_full.polys());
    let child = ClosedSubsetRepr::new(x.base.clone(), x.q.clone(), x.u_dim, eqs)?;
    let mut out = run(&child, trace, Some((node, Branch::DerivativeCall)))?;

    trace.take(node, Branch::ShiftCall);
    out.extend(shift_branch(x, &split, &h, trace, node)?);
    Ok(out)
}

fn exit_at_base(x: &ClosedSubsetRepr, trace: &mut RecursionTrace, node: usize) -> Result<Vec<Morphism>, ParamError> {
    let nb = x.nbase();
    let mut gens = x.base.gens.clone();
    gens.extend(x.equations.iter().cloned());
    if is_trivial(&gens, nb) {
        trace.note(node, 1, "empty".into());
        return Ok(Vec::new());
    }
    let a = if x.equations.iter().all(|f| x.base.vanishes(f)) {
        x.base.radicalised()?
    } else {
        AffineVariety::new(x.base.ring.clone(), radical(&gens, nb)?).with_radical(true)
    };
    trace.note(node, 1, format!("A has {} equations", a.gens.len()));
    let zero = PolynomialFunctor::zero();
    let map: Vec<Poly<Q>> = (0..nb).map(|v| Poly::var(nb, v)).collect();
    Ok(vec![morphism_from_instance(&a, &zero, &x.base, &zero, 1, &map)?])
}

/// `α' × id_R: A' × (P' ⊕ R) → B × (Q' ⊕ R)`.
fn times_identity(alpha: &Morphism, x: &ClosedSubsetRepr, split: &TopSplit) -> Result<Morphism, ParamError> {
    let r = PolynomialFunctor::schur(split.r.clone());
    let (p, left, right) = alpha.p.direct_sum(&r);
    let d = map_space(&p, &x.q)?.d();
    let inst = evaluate_morphism(alpha, d)?;
    let ka = alpha.a.nvars();
    let src = FunctorInstance::new(&p, d)?;
    let p_emb = FunctorInstance::new(&alpha.p, d)?.embedding_into(&src, &left);
    let r_emb = FunctorInstance::new(&r, d)?.embedding_into(&src, &right);
    let nv = ka + src.dim();
    let rename: Vec<usize> = (0..ka).chain(p_emb.iter().map(|&i| ka + i)).collect();
    let tgt = FunctorInstance::new(&x.q, d)?;
    let q_emb = FunctorInstance::new(&split.rest, d)?.embedding_into(&tgt, &split.rest_pos);
    let r_tgt = FunctorInstance::new(&r, d)?.embedding_into(&tgt, &[split.r_pos]);
    let mut fibre = vec![Poly::zero(nv); tgt.dim()];
    for (j, f) in inst.fibre.iter().enumerate() {
        fibre[q_emb[j]] = f.rename(nv, &rename);
    }
    for (j, &t) in r_tgt.iter().enumerate() {
        fibre[t] = Poly::var(nv, ka + r_emb[j]);
    }
    let mut map: Vec<Poly<Q>> = inst.base.iter().map(|f| f.rename(nv, &rename)).collect();
    map.extend(fibre);
    Ok(morphism_from_instance(&alpha.a, &p, &x.base, &x.q, d, &map)?)
}

/// Data of steps 9–11 shared by every component of the shift branch.
struct ShiftBranch<'a> {
    x: &'a ClosedSubsetRepr,
    dec: ShiftDecomposition,
    r_copy: CopyIndex,
    q2: PolynomialFunctor,
    q2_pos: Vec<CopyIndex>,
    b2: AffineVariety,
    /// Number of variables of `B × Q(U)`; the witness `w` follows.
    nbc: usize,
}

fn shift_branch(
    x: &ClosedSubsetRepr,
    split: &TopSplit,
    h: &Poly<Q>,
    trace: &mut RecursionTrace,
    node: usize,
) -> Result<Vec<Morphism>, ParamError> {
    let u = x.u_dim;
    let dec = lr_shift(&x.q, u)?;
    let r_copy = dec
        .top_copy_of(split.r_pos)
        .ok_or_else(|| SchurError::Shift(format!("no top copy of S{} in the shift", split.r)))?;
    let (q2, q2_pos) = dec.pure_part().without_copy(r_copy);
    trace.note(node, 9, format!("shift pure part {}, Q'' = {}", dec.pure_part(), q2));

    let shifted = shift_closed_subset(x, u)?;
    let base_c = &shifted.subset.base;
    let nbc = base_c.nvars();
    let b2 = match localize(base_c, h) {
        Ok(loc) => loc.variety,
        Err(GeometryError::EmptyLocalization) => {
            trace.note(node, 9, "h vanishes on the base; shift branch empty".into());
            return Ok(Vec::new());
        }
        Err(e) => return Err(e.into()),
    };
    let sb = ShiftBranch { x, dec, r_copy, q2, q2_pos, b2, nbc };

    let pu = FunctorInstance::new(sb.dec.pure_part(), u)?;
    let eqs = sb.localised(&shifted.subset.equations, &pu);
    let (r_idx, q2_idx) = sb.fibre_split(&pu)?;
    let nv2 = nbc + 1 + pu.dim();
    let elim = eliminate(&eqs, &r_idx, nv2);
    let keep: Vec<usize> = (0..nbc + 1).chain(q2_idx).collect();
    let g2: Vec<Poly<Q>> = elim.iter().map(|p| p.restrict(&keep).expect("eliminated")).collect();
    let g2 = basis(&g2, keep.len()).polys();
    trace.note(node, 11, format!("{} equations on B'' x Q''(U)", g2.len()));

    let child = ClosedSubsetRepr::new(sb.b2.clone(), sb.q2.clone(), u, g2)?;
    let sub = run(&child, trace, Some((node, Branch::ShiftCall)))?;
    let mut iotas: HashMap<usize, Vec<(usize, Poly<Q>)>> = HashMap::new();
    let mut out = Vec::with_capacity(sub.len());
    for alpha in &sub {
        let d = map_space(&alpha.p, &x.q)?.d();
        if let std::collections::hash_map::Entry::Vacant(e) = iotas.entry(d) {
            e.insert(sb.embedding_inverse(d)?);
        }
        out.push(sb.compose(alpha, d, &iotas[&d])?);
    }
    trace.note(node, 13, format!("{} shift components", out.len()));
    Ok(out)
}

impl ShiftBranch<'_> {
    /// Move equations on `(B × Q(U)) × pure(K^n)` into `B'' × pure(K^n)`
    /// and add the equations of `B''`.
    fn localised(&self, eqs: &[Poly<Q>], pure: &FunctorInstance) -> Vec<Poly<Q>> {
        let nv_old = self.nbc + pure.dim();
        let nv = nv_old + 1;
        let ins: Vec<usize> = (0..nv_old).map(|i| if i < self.nbc { i } else { i + 1 }).collect();
        let mut out: Vec<Poly<Q>> = eqs.iter().map(|f| f.rename(nv, &ins)).collect();
        out.extend(self.b2.gens.iter().map(|g| g.extend(pure.dim())));
        out
    }

    /// Indices of the `R` and `Q''` coordinates in `B'' × pure(K^n)`.
    fn fibre_split(&self, pure: &FunctorInstance) -> Result<(Vec<usize>, Vec<usize>), ParamError> {
        let off = self.nbc + 1;
        let r = pure.copy_range(self.r_copy).expect("R copy").map(|i| off + i).collect();
        let q2 = FunctorInstance::new(&self.q2, pure.n())?;
        let q2_idx = q2.embedding_into(pure, &self.q2_pos).into_iter().map(|i| off + i).collect();
        Ok((r, q2_idx))
    }

    /// `ι` at `K^d`: each `R(K^d)` coordinate as a polynomial on
    /// `B'' × Q''(K^d)`, written in the ring `B'' × pure(K^d)`.
    fn embedding_inverse(&self, d: usize) -> Result<Vec<(usize, Poly<Q>)>, ParamError> {
        let pd = FunctorInstance::new(self.dec.pure_part(), d)?;
        let eqs = self.localised(&shifted_instance_equations(self.x, &self.dec, d)?, &pd);
        let (r_idx, _) = self.fibre_split(&pd)?;
        let nv = self.nbc + 1 + pd.dim();
        let order = MonomialOrder::elimination(nv, &r_idx);
        let solve = |gens: Vec<Poly<Q>>| -> Option<Vec<(usize, Poly<Q>)>> {
            let gb = GroebnerBasis::new(gens, order.clone(), nv);
            r_idx
                .iter()
                .map(|&t| {
                    let nf = gb.normal_form(&Poly::var(nv, t));
                    r_idx.iter().all(|&v| !nf.uses_var(v)).then_some((t, nf))
                })
                .collect()
        };
        if let Some(iota) = solve(eqs.clone()) {
            return Ok(iota);
        }
        solve(radical(&eqs, nv)?).ok_or_else(|| {
            let names = pd.names("y");
            let bad = r_idx.first().map(|&t| names[t - self.nbc - 1].clone()).unwrap_or_default();
            ParamError::Embedding(bad)
        })
    }

    /// `π ∘ ι ∘ α''` as a morphism `A'' × P'' → B × Q`.
    fn compose(&self, alpha: &Morphism, d: usize, iota: &[(usize, Poly<Q>)]) -> Result<Morphism, ParamError> {
        let x = self.x;
        let u = x.u_dim;
        let nb = x.nbase();
        let inst = evaluate_morphism(alpha, d)?;
        let nvs = inst.ring.len();
        let pd = FunctorInstance::new(self.dec.pure_part(), d)?;
        let emb = FunctorInstance::new(&self.q2, d)?.embedding_into(&pd, &self.q2_pos);
        let mut qt = vec![Poly::zero(nvs); pd.dim()];
        for (j, f) in inst.fibre.iter().enumerate() {
            qt[emb[j]] = f.clone();
        }
        let images: Vec<Poly<Q>> = inst.base.iter().chain(qt.iter()).cloned().collect();
        for (t, p) in iota {
            qt[t - self.nbc - 1] = p.substitute_into(nvs, &images);
        }

        let w = self.dec.witness(d)?;
        let cols: Vec<&Poly<Q>> = inst.base[nb..self.nbc].iter().chain(qt.iter()).collect();
        let big = FunctorInstance::new(&x.q, u + d)?;
        let tgt = FunctorInstance::new(&x.q, d)?;
        let mut map: Vec<Poly<Q>> = inst.base[..nb].to_vec();
        for label in tgt.coords() {
            let mut shifted = label.clone();
            shifted.tableau = label.tableau.map_letters(|l| l + u as u8);
            let row = &w.matrix[big.index_of(&shifted).expect("shifted coordinate")];
            let mut acc = Poly::zero(nvs);
            for (c, v) in row.iter().enumerate() {
                if !crate::algebra::Field::is_zero(v) {
                    acc = acc.add_scaled(cols[c], v);
                }
            }
            map.push(acc);
        }

        if !alpha.a.gens.is_empty() {
            let extra = nvs - alpha.a.nvars();
            let gens: Vec<Poly<Q>> = alpha.a.gens.iter().map(|g| g.extend(extra)).collect();
            let gb = basis(&gens, nvs);
            map = map.iter().map(|f| gb.normal_form(f)).collect();
        }
        Ok(morphism_from_instance(&alpha.a, &alpha.p, &x.base, &x.q, d, &map)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::same_ideal;
    use crate::algebra::intersect;
    use crate::geometry::{image_closure_instance, instance_equations};

    fn subset(q: &str, u: usize, eqs: impl Fn(&[Poly<Q>]) -> Vec<Poly<Q>>) -> ClosedSubsetRepr {
        let q = PolynomialFunctor::parse(q).unwrap();
        let n = q.dim(u) as usize;
        let vars: Vec<Poly<Q>> = (0..n).map(|i| Poly::var(n, i)).collect();
        ClosedSubsetRepr::new(AffineVariety::point(), q, u, eqs(&vars)).unwrap()
    }

    fn union_closure(res: &ParamResult, n: usize, nv: usize) -> Vec<Poly<Q>> {
        let mut acc = vec![Poly::one(nv)];
        for m in &res.components {
            let img = image_closure_instance(m, n).unwrap();
            acc = intersect(&acc, &img.gens, nv);
        }
        acc
    }

    #[test]
    fn no_equations_gives_identity() {
        let x = subset("S[1]", 1, |_| vec![]);
        let res = parameterise(&x).unwrap();
        assert_eq!(res.components.len(), 1);
        let id = Morphism::identity(&AffineVariety::point(), &x.q).unwrap();
        assert_eq!(res.components[0].alpha1, id.alpha1);
        assert_eq!(res.components[0].p, x.q);
    }

    #[test]
    fn vanishing_coordinate() {
        let x = subset("S[1]", 1, |v| vec![v[0].clone()]);
        let res = parameterise(&x).unwrap();
        for n in 1..=3 {
            let expect = instance_equations(&x, n).unwrap();
            assert!(same_ideal(&union_closure(&res, n, n), &expect.gens, n), "n = {}", n);
        }
    }

    #[test]
    fn trace_lines_mention_steps() {
        let x = subset("S[1]", 1, |v| vec![v[0].clone()]);
        let res = parameterise(&x).unwrap();
        assert!(res.trace.log().iter().any(|l| l.contains("step 13")));
        assert!(res.trace.entries().iter().any(|e| e.taken.contains(&Branch::ShiftCall)));
    }

    #[test]
    fn rank_one_symmetric() {
        let x = subset("S[2]", 2, |v| vec![v[0].mul(&v[2]).sub(&v[1].pow(2))]);
        let res = parameterise(&x).unwrap();
        for n in 1..=2 {
            let nv = x.q.dim(n) as usize;
            let expect = instance_equations(&x, n).unwrap();
            assert!(same_ideal(&union_closure(&res, n, nv), &expect.gens, nv), "n = {}", n);
        }
    }
}
