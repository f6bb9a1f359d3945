//! Decomposition of the shift `V ↦ P(U ⊕ V)` with `U = K^k`.
//!
//! `S_λ(U ⊕ V) = ⊕_{μ,ν} c^λ_{μν} S_μ(U) ⊗ S_ν(V)`. The `ν = ∅` part is the
//! constant `P(U)`; each `ν ≠ ∅` contributes `m_ν = Σ_μ c^λ_{μν} dim S_μ(U)`
//! copies of `S_ν`, realised by a basis of `GL(V)`-equivariant linear maps
//! `S_ν(K^j) → S_λ(K^{k+j})` with `j = |ν|`.

use std::collections::BTreeMap;

use crate::algebra::linalg::{inverse, RowReducer};
use crate::algebra::{Field, Q};

use super::functor::{CopyIndex, PolynomialFunctor};
use super::instance::{CoordLabel, FunctorInstance};
use super::partition::{lr_coefficient, Partition};
use super::tensor::SchurRealisation;
use super::SchurError;

/// One copy of `S_ν` in the pure part, embedded into one copy of `S_λ`.
#[derive(Clone, Debug)]
pub struct ShiftComponent {
    pub nu: Partition,
    /// Position of this copy in the pure part.
    pub pure: CopyIndex,
    /// The copy of `P` it lives in.
    pub parent: CopyIndex,
    /// `S_ν(K^j) → S_λ(K^{k+j})`, rows indexed by the target basis.
    embedding: Vec<Vec<Q>>,
}

#[derive(Clone, Debug)]
pub struct ShiftDecomposition {
    functor: PolynomialFunctor,
    k: usize,
    base_dim: usize,
    pure_part: PolynomialFunctor,
    components: Vec<ShiftComponent>,
}

/// Change of basis at `V = K^n`: columns are the coordinates of `P(U)`
/// followed by those of the pure part at `K^n`, rows the coordinates of
/// `P(K^{k+n})`.
#[derive(Clone, Debug)]
pub struct ShiftWitness {
    pub n: usize,
    pub matrix: Vec<Vec<Q>>,
    pub inverse: Vec<Vec<Q>>,
}

/// Multiplicities `m_ν` of the pure part of the shift of `S_λ` by `K^k`.
pub fn shift_multiplicities(lambda: &Partition, k: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    for j in 1..=lambda.size() {
        for nu in Partition::all_of_size(j) {
            if !lambda.contains(&nu) {
                continue;
            }
            let mut m = 0;
            for mu in Partition::all_of_size(lambda.size() - j) {
                let c = lr_coefficient(lambda, &mu, &nu);
                if c > 0 {
                    m += c * mu.weyl_dimension(k);
                }
            }
            if m > 0 {
                out.insert(nu, m);
            }
        }
    }
    out
}

fn v_content(t: &CoordLabel, k: usize, n: usize) -> Vec<u32> {
    t.tableau.content(k + n)[k..].to_vec()
}

/// Basis of the equivariant embeddings `S_ν(K^j) → S_λ(K^{k+j})`.
fn embeddings(lambda: &Partition, nu: &Partition, k: usize) -> Result<Vec<Vec<Vec<Q>>>, SchurError> {
    let j = nu.size() as usize;
    let src = FunctorInstance::new(&PolynomialFunctor::schur(nu.clone()), j)?;
    let tgt = FunctorInstance::new(&PolynomialFunctor::schur(lambda.clone()), k + j)?;
    let (ns, nt) = (src.dim(), tgt.dim());
    let unknown = |t: usize, s: usize| t * ns + s;
    let src_content = src.contents();
    let allowed: Vec<Vec<bool>> = tgt
        .coords()
        .iter()
        .map(|t| {
            let vc = v_content(t, k, j);
            src_content.iter().map(|c| *c == vc).collect()
        })
        .collect();
    let mut red: RowReducer<Q> = RowReducer::new(nt * ns);
    for a in 1..=j as u8 {
        for b in 1..=j as u8 {
            if a == b {
                continue;
            }
            let ls = src.lie_columns(a, b);
            let lt = tgt.lie_columns(k as u8 + a, k as u8 + b);
            // (L ρ_ν)[t][s] − (ρ_λ L)[t][s] = 0
            let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
            for (s, col) in ls.iter().enumerate() {
                for (s2, v) in col {
                    for t in 0..nt {
                        if allowed[t][*s2] {
                            let e = eqs.entry((t, s)).or_default().entry(unknown(t, *s2)).or_insert_with(Q::zero);
                            *e = e.add(v);
                        }
                    }
                }
            }
            for (t2, col) in lt.iter().enumerate() {
                for (t, v) in col {
                    for s in 0..ns {
                        if allowed[t2][s] {
                            let e = eqs.entry((*t, s)).or_default().entry(unknown(t2, s)).or_insert_with(Q::zero);
                            *e = e.sub(v);
                        }
                    }
                }
            }
            for row in eqs.into_values() {
                let r: Vec<(usize, Q)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !r.is_empty() {
                    red.push(r);
                }
            }
        }
    }
    // forbid disallowed entries
    for t in 0..nt {
        for s in 0..ns {
            if !allowed[t][s] {
                red.push(vec![(unknown(t, s), Q::one())]);
            }
        }
    }
    Ok(red
        .kernel()
        .into_iter()
        .map(|v| (0..nt).map(|t| v[t * ns..(t + 1) * ns].to_vec()).collect())
        .collect())
}

/// Decompose `Sh_U P` for `U = K^k`; `P` must be pure.
pub fn lr_shift(p: &PolynomialFunctor, k: usize) -> Result<ShiftDecomposition, SchurError> {
    if !p.is_pure() {
        return Err(SchurError::NotPure(p.to_string()));
    }
    let base_dim = p.dim(k) as usize;
    let mut pieces: Vec<(Partition, CopyIndex, Vec<Vec<Q>>)> = Vec::new();
    let mut cache: BTreeMap<(Partition, Partition), Vec<Vec<Vec<Q>>>> = BTreeMap::new();
    for ci in p.copies() {
        let lambda = p.partition(ci.summand).clone();
        for (nu, m) in shift_multiplicities(&lambda, k) {
            let key = (lambda.clone(), nu.clone());
            if !cache.contains_key(&key) {
                cache.insert(key.clone(), embeddings(&lambda, &nu, k)?);
            }
            let embs = &cache[&key];
            if embs.len() as u64 != m {
                return Err(SchurError::Shift(format!(
                    "S{} in the shift of S{} by K^{}: found {} embeddings, expected {}",
                    nu,
                    lambda,
                    k,
                    embs.len(),
                    m
                )));
            }
            for e in embs {
                pieces.push((nu.clone(), ci, e.clone()));
            }
        }
    }
    let pure_part = PolynomialFunctor::from_summands(pieces.iter().map(|(nu, _, _)| (nu.clone(), 1)));
    let mut next_copy: BTreeMap<Partition, usize> = BTreeMap::new();
    let components = pieces
        .into_iter()
        .map(|(nu, parent, embedding)| {
            let s = pure_part.summands().iter().position(|(q, _)| *q == nu).expect("summand");
            let c = next_copy.entry(nu.clone()).or_insert(0);
            let pure = CopyIndex { summand: s, copy: *c };
            *c += 1;
            ShiftComponent { nu, pure, parent, embedding }
        })
        .collect();
    Ok(ShiftDecomposition { functor: p.clone(), k, base_dim, pure_part, components })
}

impl ShiftDecomposition {
    pub fn functor(&self) -> &PolynomialFunctor {
        &self.functor
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn pure_part(&self) -> &PolynomialFunctor {
        &self.pure_part
    }

    pub fn components(&self) -> &[ShiftComponent] {
        &self.components
    }

    /// The pure-part copy carrying the top component `ν = λ` of `parent`.
    pub fn top_copy_of(&self, parent: CopyIndex) -> Option<CopyIndex> {
        let lambda = self.functor.partition(parent.summand);
        self.components.iter().find(|c| c.parent == parent && &c.nu == lambda).map(|c| c.pure)
    }

    /// Explicit isomorphism `P(U) ⊕ pure(K^n) → P(K^{k+n})`.
    pub fn witness(&self, n: usize) -> Result<ShiftWitness, SchurError> {
        let k = self.k;
        let whole = FunctorInstance::new(&self.functor, k + n)?;
        let base = FunctorInstance::new(&self.functor, k)?;
        let pure = FunctorInstance::new(&self.pure_part, n)?;
        let cols = base.dim() + pure.dim();
        let mut matrix = vec![vec![Q::zero(); cols]; whole.dim()];
        for (c, label) in base.coords().iter().enumerate() {
            let r = whole.index_of(label).expect("base coordinate");
            matrix[r][c] = Q::one();
        }
        for comp in &self.components {
            let j = comp.nu.size() as usize;
            let lambda = self.functor.partition(comp.parent.summand);
            let tgt_j = SchurRealisation::get(lambda, k + j)?;
            let src_j = SchurRealisation::get(&comp.nu, j)?;
            let range = pure.copy_range(comp.pure).expect("pure copy");
            for (off, label) in pure.coords()[range.clone()].iter().enumerate() {
                let letters = label.tableau.letters();
                let compressed =
                    label.tableau.map_letters(|l| letters.iter().position(|&x| x == l).expect("letter") as u8 + 1);
                let s = src_j.index_of(&compressed).expect("source tableau");
                for (t, row) in comp.embedding.iter().enumerate() {
                    if row[s].is_zero() {
                        continue;
                    }
                    let tab = tgt_j.tableaux()[t].map_letters(|l| {
                        if (l as usize) <= k {
                            l
                        } else {
                            k as u8 + letters[l as usize - k - 1]
                        }
                    });
                    let lab = CoordLabel { summand: comp.parent.summand, copy: comp.parent.copy, tableau: tab };
                    let r = whole.index_of(&lab).expect("target coordinate");
                    matrix[r][base.dim() + range.start + off] = row[s].clone();
                }
            }
        }
        let inverse = inverse(&matrix).map_err(|_| SchurError::Shift("change of basis is singular".into()))?;
        Ok(ShiftWitness { n, matrix, inverse })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::mat_mul;
    use crate::schur::apply_map;

    fn f(s: &str) -> PolynomialFunctor {
        PolynomialFunctor::parse(s).unwrap()
    }

    #[test]
    fn small_shifts() {
        let s = lr_shift(&f("S[1]"), 2).unwrap();
        assert_eq!((s.base_dim(), s.pure_part().clone()), (2, f("S[1]")));
        let s = lr_shift(&f("S[2]"), 1).unwrap();
        assert_eq!((s.base_dim(), s.pure_part().clone()), (1, f("S[2] + S[1]")));
        let s = lr_shift(&f("S[2,1]"), 2).unwrap();
        assert_eq!(s.pure_part().clone(), f("S[2,1] + 2*S[2] + 2*S[1,1] + 4*S[1]"));
    }

    #[test]
    fn witness_block_diagonalises() {
        let p = f("S[2] + S[1,1]");
        let s = lr_shift(&p, 1).unwrap();
        let w = s.witness(2).unwrap();
        let q = |v: i64| Q::from(v);
        // id_U ⊕ φ
        let phi = vec![vec![q(1), q(0), q(0)], vec![q(0), q(2), q(1)], vec![q(0), q(-1), q(3)]];
        let big = apply_map(&p, &phi, 3, &q(0)).unwrap().entries;
        let conj = mat_mul(&w.inverse, &mat_mul(&big, &w.matrix));
        let small = apply_map(s.pure_part(), &[vec![q(2), q(1)], vec![q(-1), q(3)]], 2, &q(0)).unwrap().entries;
        let b = s.base_dim();
        for (i, row) in conj.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i < b || j < b {
                    if i == j { q(1) } else { q(0) }
                } else {
                    small[i - b][j - b].clone()
                };
                assert_eq!(v, &expect, "entry {} {}", i, j);
            }
        }
    }
}
