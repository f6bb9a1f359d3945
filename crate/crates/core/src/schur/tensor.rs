//! Realisation of `S_λ(K^n)` inside the tensor power `(K^n)^{⊗|λ|}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::linalg::{inverse, RingElem, RowReducer};
use crate::algebra::{Field, Q};

use super::partition::{ssyt, Partition, Tableau};
use super::SchurError;

/// A word over `1..=n`, one letter per tensor factor.
pub type Word = Vec<u8>;

/// Basis `b_T` of `S_λ(K^n)` as sparse tensors, together with a set of
/// pivot words on which the basis is invertible.
#[derive(Debug)]
pub struct SchurRealisation {
    shape: Partition,
    n: usize,
    tableaux: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    vectors: Vec<BTreeMap<Word, Q>>,
    pivots: Vec<Word>,
    /// `inv[i][j]`: coordinate `j` of a tensor is `Σ_i x[pivots[i]]·inv[i][j]`.
    inv: Vec<Vec<Q>>,
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    // (permutation, is_odd)
    if k == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(k - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, k - 1);
            let moved = p.len() - slot;
            out.push((q, odd ^ (moved % 2 == 1)));
        }
    }
    out
}

fn act_on_group(x: &BTreeMap<Word, Q>, group: &[usize], signed: bool) -> BTreeMap<Word, Q> {
    if group.len() < 2 {
        return x.clone();
    }
    let perms = permutations(group.len());
    let mut out: BTreeMap<Word, Q> = BTreeMap::new();
    for (w, c) in x {
        for (p, odd) in &perms {
            let mut v = w.clone();
            for (i, &pi) in p.iter().enumerate() {
                v[group[pi]] = w[group[i]];
            }
            let c = if signed && *odd { c.neg() } else { c.clone() };
            let e = out.entry(v).or_insert_with(Q::zero);
            *e = e.add(&c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Column antisymmetrisation followed by row symmetrisation of `e_word`.
fn symmetrised(shape: &Partition, word: &[u8]) -> BTreeMap<Word, Q> {
    let mut offsets = Vec::new();
    let mut pos = 0usize;
    for &r in shape.parts() {
        offsets.push(pos);
        pos += r as usize;
    }
    let mut x: BTreeMap<Word, Q> = BTreeMap::new();
    x.insert(word.to_vec(), Q::one());
    let conj = shape.conjugate();
    for (j, &len) in conj.parts().iter().enumerate() {
        let group: Vec<usize> = (0..len as usize).map(|i| offsets[i] + j).collect();
        x = act_on_group(&x, &group, true);
    }
    for (i, &r) in shape.parts().iter().enumerate() {
        let group: Vec<usize> = (0..r as usize).map(|j| offsets[i] + j).collect();
        x = act_on_group(&x, &group, false);
    }
    x
}

impl SchurRealisation {
    fn build(shape: &Partition, n: usize) -> Result<SchurRealisation, SchurError> {
        let tableaux = ssyt(shape, n);
        let mut vectors = Vec::with_capacity(tableaux.len());
        for t in &tableaux {
            let mut v = symmetrised(shape, &t.word());
            let lead = v.values().next().cloned().ok_or_else(|| SchurError::Degenerate { shape: shape.to_string(), n })?;
            let li = lead.inv().expect("nonzero");
            for c in v.values_mut() {
                *c = c.mul(&li);
            }
            vectors.push(v);
        }
        let mut columns: BTreeMap<Word, usize> = BTreeMap::new();
        for v in &vectors {
            for w in v.keys() {
                let k = columns.len();
                columns.entry(w.clone()).or_insert(k);
            }
        }
        let words: Vec<Word> = {
            let mut ws: Vec<(usize, Word)> = columns.iter().map(|(w, &i)| (i, w.clone())).collect();
            ws.sort();
            ws.into_iter().map(|(_, w)| w).collect()
        };
        let mut red = RowReducer::new(columns.len());
        for v in &vectors {
            let mut row: Vec<(usize, Q)> = v.iter().map(|(w, c)| (columns[w], c.clone())).collect();
            row.sort_by_key(|t| t.0);
            if !red.push(row) {
                return Err(SchurError::Degenerate { shape: shape.to_string(), n });
            }
        }
        let pivots: Vec<Word> = red.pivot_columns().into_iter().map(|c| words[c].clone()).collect();
        // m[T][i] = b_T[pivot_i]
        let m: Vec<Vec<Q>> =
            vectors.iter().map(|v| pivots.iter().map(|p| v.get(p).cloned().unwrap_or_else(Q::zero)).collect()).collect();
        let inv = inverse(&m).map_err(|_| SchurError::Degenerate { shape: shape.to_string(), n })?;
        let index = tableaux.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(SchurRealisation { shape: shape.clone(), n, tableaux, index, vectors, pivots, inv })
    }

    /// Shared realisation of `S_λ(K^n)`, built once per `(λ, n)`.
    pub fn get(shape: &Partition, n: usize) -> Result<Arc<SchurRealisation>, SchurError> {
        type Cache = Mutex<HashMap<(Partition, usize), Arc<SchurRealisation>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().expect("schur cache").get(&(shape.clone(), n)) {
            return Ok(r.clone());
        }
        let built = Arc::new(SchurRealisation::build(shape, n)?);
        let mut guard = cache.lock().expect("schur cache");
        Ok(guard.entry((shape.clone(), n)).or_insert(built).clone())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn vector(&self, i: usize) -> &BTreeMap<Word, Q> {
        &self.vectors[i]
    }

    pub fn pivots(&self) -> &[Word] {
        &self.pivots
    }

    /// Coordinates of a tensor in the span, given its entries at the pivot
    /// words.
    pub fn coordinates<R: RingElem>(&self, at_pivots: &[R], zero: &R) -> Vec<R> {
        (0..self.dim())
            .map(|j| {
                let mut acc = zero.clone();
                for (i, x) in at_pivots.iter().enumerate() {
                    let c = &self.inv[i][j];
                    if !c.is_zero() && !x.r_is_zero() {
                        acc = acc.r_add(&x.r_scale(c));
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix of `S_λ(φ)` for `φ: K^m → K^n` given by `phi` (n rows, m
    /// columns), from the realisation `source` on `K^m` to `self`.
    pub fn induced<R: RingElem>(&self, source: &SchurRealisation, phi: &[Vec<R>], zero: &R) -> Vec<Vec<R>> {
        let one = zero.one_like();
        let mut out = vec![vec![zero.clone(); source.dim()]; self.dim()];
        for (t, bt) in source.vectors.iter().enumerate() {
            let at: Vec<R> = self
                .pivots
                .iter()
                .map(|p| {
                    let mut acc = zero.clone();
                    for (w, c) in bt {
                        let mut prod = one.clone();
                        for (pk, wk) in p.iter().zip(w) {
                            let e = &phi[*pk as usize - 1][*wk as usize - 1];
                            if e.r_is_zero() {
                                prod = zero.clone();
                                break;
                            }
                            prod = prod.r_mul(e);
                        }
                        if !prod.r_is_zero() {
                            acc = acc.r_add(&prod.r_scale(c));
                        }
                    }
                    acc
                })
                .collect();
            for (s, v) in self.coordinates(&at, zero).into_iter().enumerate() {
                out[s][t] = v;
            }
        }
        out
    }

    /// Matrix of the elementary matrix `E_ab` (1-based) acting on `S_λ(K^n)`.
    pub fn lie_matrix(&self, a: u8, b: u8) -> Vec<Vec<Q>> {
        let zero = Q::zero();
        let mut out = vec![vec![Q::zero(); self.dim()]; self.dim()];
        for (t, bt) in self.vectors.iter().enumerate() {
            let at: Vec<Q> = self
                .pivots
                .iter()
                .map(|p| {
                    let mut acc = Q::zero();
                    for k in 0..p.len() {
                        if p[k] == a {
                            let mut w = p.clone();
                            w[k] = b;
                            if let Some(c) = bt.get(&w) {
                                acc = acc.add(c);
                            }
                        }
                    }
                    acc
                })
                .collect();
            for (s, v) in self.coordinates(&at, &zero).into_iter().enumerate() {
                out[s][t] = v;
            }
        }
        out
    }
}
