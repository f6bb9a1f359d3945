//! Bases of `Map(P, Q)` by solving the infinitesimal equivariance system,
//! and extension of equivariant maps from `K^d` to any `K^n`.
//!
//! Polynomial maps on instances live in rings laid out as `k` parameter
//! variables followed by the coordinates of `P(K^n)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::linalg::RowReducer;
use crate::algebra::poly::Exps;
use crate::algebra::{Field, MonomialOrder, Poly, Q};

use super::functor::PolynomialFunctor;
use super::instance::{CoordLabel, FunctorInstance};
use super::SchurError;

type ExtensionCache = Mutex<HashMap<(usize, usize), Arc<Vec<Poly<Q>>>>>;

/// Basis of the equivariant polynomial maps `P(K^d) → Q(K^d)`.
#[derive(Debug)]
pub struct MapSpaceBasis {
    d: usize,
    source: FunctorInstance,
    target: FunctorInstance,
    elements: Vec<Vec<Poly<Q>>>,
    /// Coordinate functional per element: (target coordinate, monomial).
    pivots: Vec<(usize, Exps)>,
    extended: ExtensionCache,
}

/// Exponent vectors over coordinates with the given contents whose total
/// content is `target`.
fn monomials_with_content(contents: &[Vec<u32>], target: &[u32]) -> Vec<Exps> {
    fn rec(i: usize, contents: &[Vec<u32>], rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Exps>) {
        if rest.iter().all(|&r| r == 0) {
            let mut e = cur.clone();
            e.resize(contents.len(), 0);
            out.push(e);
            return;
        }
        if i == contents.len() {
            return;
        }
        let c = &contents[i];
        let max = c.iter().zip(rest.iter()).filter(|(ci, _)| **ci > 0).map(|(ci, r)| r / ci).min().unwrap_or(0);
        for k in (0..=max).rev() {
            for (r, ci) in rest.iter_mut().zip(c) {
                *r -= k * ci;
            }
            cur.push(k);
            rec(i + 1, contents, rest, cur, out);
            cur.pop();
            for (r, ci) in rest.iter_mut().zip(c) {
                *r += k * ci;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, contents, &mut target.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn transpose_columns(cols: &[Vec<(usize, Q)>]) -> Vec<Vec<(usize, Q)>> {
    let mut rows = vec![Vec::new(); cols.len()];
    for (l, col) in cols.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((l, v.clone()));
        }
    }
    rows
}

fn shifted(m: &Exps, minus: usize, plus: usize) -> Exps {
    let mut e = m.to_vec();
    e[minus] -= 1;
    e[plus] += 1;
    e
}

/// Residuals `Q(E_ab)F(x) − dF_x(P(E_ab)x)` for all `a, b ≤ d`.
fn residuals(map: &[Poly<Q>], k: usize, source: &FunctorInstance, target: &FunctorInstance) -> Vec<Poly<Q>> {
    let nv = k + source.dim();
    let d = source.n();
    let mut out = Vec::new();
    for a in 1..=d as u8 {
        for b in 1..=d as u8 {
            let lq = target.lie_columns(a, b);
            let lp = source.lie_columns(a, b);
            let mut res: Vec<Poly<Q>> = vec![Poly::zero(nv); target.dim()];
            for (j, col) in lq.iter().enumerate() {
                for (kk, v) in col {
                    res[*kk] = res[*kk].add_scaled(&map[j], v);
                }
            }
            // (P(E_ab) x)_i as linear forms
            let mut img: Vec<Poly<Q>> = vec![Poly::zero(nv); source.dim()];
            for (l, col) in lp.iter().enumerate() {
                for (i, v) in col {
                    img[*i] = img[*i].add_scaled(&Poly::var(nv, k + l), v);
                }
            }
            for (r, f) in res.iter_mut().zip(map) {
                for (i, li) in img.iter().enumerate() {
                    if !li.is_zero() && f.uses_var(k + i) {
                        *r = r.sub(&f.derivative(k + i).mul(li));
                    }
                }
            }
            out.extend(res.into_iter().filter(|r| !r.is_zero()));
        }
    }
    out
}

/// Whether a polynomial map `P(K^d) → Q(K^d)`, possibly with `k` leading
/// parameter variables, commutes with the `gl_d` action.
pub fn validate_equivariance(map: &[Poly<Q>], k: usize, source: &FunctorInstance, target: &FunctorInstance) -> bool {
    map.len() == target.dim() && residuals(map, k, source, target).is_empty()
}

fn solve(p: &PolynomialFunctor, q: &PolynomialFunctor) -> Result<MapSpaceBasis, SchurError> {
    for f in [p, q] {
        if !f.is_pure() {
            return Err(SchurError::NotPure(f.to_string()));
        }
    }
    let d = (p.degree().max(q.degree()) as usize).max(1);
    let source = FunctorInstance::new(p, d)?;
    let target = FunctorInstance::new(q, d)?;
    let pc = source.contents();
    let drl = MonomialOrder::DegRevLex;

    let mut unknowns: Vec<(usize, Exps)> = Vec::new();
    let mut per_target: Vec<Vec<usize>> = vec![Vec::new(); target.dim()];
    for (j, content) in target.contents().iter().enumerate() {
        let mut monos = monomials_with_content(&pc, content);
        monos.sort_by(|a, b| drl.cmp(b, a));
        for m in monos {
            per_target[j].push(unknowns.len());
            unknowns.push((j, m));
        }
    }

    let mut red: RowReducer<Q> = RowReducer::new(unknowns.len());
    for a in 1..=d as u8 {
        for b in 1..=d as u8 {
            if a == b {
                continue;
            }
            let lq = target.lie_columns(a, b);
            let lp_rows = transpose_columns(&source.lie_columns(a, b));
            let mut eqs: BTreeMap<(usize, Exps), BTreeMap<usize, Q>> = BTreeMap::new();
            let mut bump = |key: (usize, Exps), u: usize, v: Q| {
                let e = eqs.entry(key).or_default().entry(u).or_insert_with(Q::zero);
                *e = e.add(&v);
            };
            for (u, (j, m)) in unknowns.iter().enumerate() {
                for (kk, v) in &lq[*j] {
                    bump((*kk, m.clone()), u, v.clone());
                }
                for (i, &mi) in m.iter().enumerate() {
                    if mi == 0 {
                        continue;
                    }
                    for (l, v) in &lp_rows[i] {
                        let c = v.mul(&Q::from(mi as i64)).neg();
                        bump((*j, shifted(m, i, *l)), u, c);
                    }
                }
            }
            for (_, row) in eqs {
                let r: Vec<(usize, Q)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !r.is_empty() {
                    red.push(r);
                }
            }
        }
    }

    let nv = source.dim();
    let mut elements = Vec::new();
    let mut pivots = Vec::new();
    for vec in red.kernel() {
        let mut polys = vec![Poly::zero(nv); target.dim()];
        let mut pivot = None;
        for (u, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, m) = &unknowns[u];
            if pivot.is_none() {
                pivot = Some((*j, m.clone()));
            }
            polys[*j] = polys[*j].add(&Poly::monomial(nv, m.clone(), c.clone()));
        }
        elements.push(polys);
        pivots.push(pivot.expect("nonzero kernel vector"));
    }
    Ok(MapSpaceBasis { d, source, target, elements, pivots, extended: Mutex::new(HashMap::new()) })
}

/// Canonical basis of `Map(P, Q)` evaluated at `d = max(deg P, deg Q, 1)`.
pub fn map_space(p: &PolynomialFunctor, q: &PolynomialFunctor) -> Result<Arc<MapSpaceBasis>, SchurError> {
    type Cache = Mutex<HashMap<(PolynomialFunctor, PolynomialFunctor), Arc<MapSpaceBasis>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (p.clone(), q.clone());
    if let Some(b) = cache.lock().expect("map space cache").get(&key) {
        return Ok(b.clone());
    }
    let built = Arc::new(solve(p, q)?);
    Ok(cache.lock().expect("map space cache").entry(key).or_insert(built).clone())
}

impl MapSpaceBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn source(&self) -> &FunctorInstance {
        &self.source
    }

    pub fn target(&self) -> &FunctorInstance {
        &self.target
    }

    /// Coordinate functional per element, `(target coordinate, monomial)`:
    /// element `i` has coefficient one there and every other element zero.
    pub fn pivots(&self) -> &[(usize, Exps)] {
        &self.pivots
    }

    pub fn element(&self, i: usize) -> &[Poly<Q>] {
        &self.elements[i]
    }

    /// Element `i` at `K^d` with `k` leading parameter variables.
    pub fn element_with_params(&self, i: usize, k: usize) -> Vec<Poly<Q>> {
        let map: Vec<usize> = (0..self.source.dim()).map(|v| k + v).collect();
        self.elements[i].iter().map(|f| f.rename(k + self.source.dim(), &map)).collect()
    }

    /// Element `i` extended to `K^n`.
    pub fn element_at(&self, i: usize, n: usize) -> Result<Arc<Vec<Poly<Q>>>, SchurError> {
        if let Some(e) = self.extended.lock().expect("extension cache").get(&(i, n)) {
            return Ok(e.clone());
        }
        let e = Arc::new(extend_coordinate_map(&self.elements[i], 0, &self.source, &self.target, n)?);
        Ok(self.extended.lock().expect("extension cache").entry((i, n)).or_insert(e).clone())
    }

    /// Coordinates of an equivariant map at `K^d` (with `k` leading
    /// parameters) against this basis, as polynomials in the parameters.
    /// `None` if the map is not in the span.
    pub fn coefficients(&self, map: &[Poly<Q>], k: usize) -> Option<Vec<Poly<Q>>> {
        if map.len() != self.target.dim() {
            return None;
        }
        let nv = k + self.source.dim();
        let mut coeffs = Vec::with_capacity(self.len());
        for (j, m) in &self.pivots {
            let terms = map[*j].terms().iter().filter(|(e, _)| e[k..] == m[..]).map(|(e, c)| {
                let mut p = e[..k].to_vec();
                p.resize(k, 0);
                (Exps::from(p), c.clone())
            });
            coeffs.push(Poly::from_terms(k, terms));
        }
        let mut rest: Vec<Poly<Q>> = map.to_vec();
        let lift: Vec<usize> = (0..k).collect();
        for (i, c) in coeffs.iter().enumerate() {
            let c = c.rename(nv, &lift);
            for (r, e) in rest.iter_mut().zip(self.element_with_params(i, k)) {
                *r = r.sub(&c.mul(&e));
            }
        }
        rest.iter().all(|r| r.is_zero()).then_some(coeffs)
    }
}

fn relabel_into(label: &CoordLabel, letters: &[u8]) -> CoordLabel {
    CoordLabel {
        summand: label.summand,
        copy: label.copy,
        tableau: label.tableau.map_letters(|l| letters[l as usize - 1]),
    }
}

/// Extend an equivariant map given at `K^d` (with `k` leading parameters)
/// to `K^n`: the coordinate `T` at `K^n` is the coordinate at `K^d` of `T`
/// with its letters compressed to `1..s`, with source coordinates relabelled
/// back.
pub fn extend_coordinate_map(
    map: &[Poly<Q>],
    k: usize,
    source_d: &FunctorInstance,
    target_d: &FunctorInstance,
    n: usize,
) -> Result<Vec<Poly<Q>>, SchurError> {
    let d = source_d.n();
    let source_n = FunctorInstance::new(source_d.functor(), n)?;
    let target_n = FunctorInstance::new(target_d.functor(), n)?;
    let nv = k + source_n.dim();
    let mut out = Vec::with_capacity(target_n.dim());
    for label in target_n.coords() {
        let letters = label.tableau.letters();
        if letters.len() > d {
            return Err(SchurError::ShapeMismatch(format!("tableau {} needs more than {} letters", label.tableau.label(), d)));
        }
        let compressed = CoordLabel {
            summand: label.summand,
            copy: label.copy,
            tableau: label.tableau.map_letters(|l| letters.iter().position(|&x| x == l).expect("letter") as u8 + 1),
        };
        let j = target_d.index_of(&compressed).ok_or_else(|| SchurError::ShapeMismatch(compressed.name("y")))?;
        let images: Vec<Poly<Q>> = (0..k)
            .map(|v| Poly::var(nv, v))
            .chain(source_d.coords().iter().map(|src| {
                if src.tableau.letters().iter().all(|&l| (l as usize) <= letters.len()) {
                    let to = relabel_into(src, &letters);
                    match source_n.index_of(&to) {
                        Some(i) => Poly::var(nv, k + i),
                        None => Poly::zero(nv),
                    }
                } else {
                    Poly::zero(nv)
                }
            }))
            .collect();
        out.push(map[j].substitute_into(nv, &images));
    }
    Ok(out)
}
