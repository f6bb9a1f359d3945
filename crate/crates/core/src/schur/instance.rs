//! Concrete instances `P(K^n)` with tableau-labelled coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::linalg::RingElem;
use crate::algebra::{Field, Q};

use super::functor::{CopyIndex, PolynomialFunctor};
use super::partition::Tableau;
use super::tensor::SchurRealisation;
use super::SchurError;

/// Label of one coordinate of `P(K^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordLabel {
    pub summand: usize,
    pub copy: usize,
    pub tableau: Tableau,
}

impl CoordLabel {
    pub fn name(&self, prefix: &str) -> String {
        format!("{}.{}.{}.{}", prefix, self.summand, self.copy, self.tableau.label())
    }

    pub fn copy_index(&self) -> CopyIndex {
        CopyIndex { summand: self.summand, copy: self.copy }
    }
}

#[derive(Clone, Debug)]
struct Block {
    copy: CopyIndex,
    offset: usize,
    real: Arc<SchurRealisation>,
}

/// Basis of `P(K^n)`: copies in canonical order, tableaux in lexicographic
/// order of reading words within each copy.
#[derive(Clone, Debug)]
pub struct FunctorInstance {
    functor: PolynomialFunctor,
    n: usize,
    coords: Vec<CoordLabel>,
    blocks: Vec<Block>,
    index: HashMap<CoordLabel, usize>,
}

impl FunctorInstance {
    pub fn new(functor: &PolynomialFunctor, n: usize) -> Result<FunctorInstance, SchurError> {
        let mut coords = Vec::new();
        let mut blocks = Vec::new();
        for ci in functor.copies() {
            let real = SchurRealisation::get(functor.partition(ci.summand), n)?;
            blocks.push(Block { copy: ci, offset: coords.len(), real: real.clone() });
            for t in real.tableaux() {
                coords.push(CoordLabel { summand: ci.summand, copy: ci.copy, tableau: t.clone() });
            }
        }
        let index = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(FunctorInstance { functor: functor.clone(), n, coords, blocks, index })
    }

    pub fn functor(&self) -> &PolynomialFunctor {
        &self.functor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[CoordLabel] {
        &self.coords
    }

    pub fn index_of(&self, label: &CoordLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn names(&self, prefix: &str) -> Vec<String> {
        self.coords.iter().map(|c| c.name(prefix)).collect()
    }

    /// Grading weight `|λ|` of each coordinate.
    pub fn weights(&self) -> Vec<u32> {
        self.coords.iter().map(|c| self.functor.partition(c.summand).size()).collect()
    }

    /// Torus weight of each coordinate.
    pub fn contents(&self) -> Vec<Vec<u32>> {
        self.coords.iter().map(|c| c.tableau.content(self.n)).collect()
    }

    /// Offset and size of the coordinates of one copy.
    pub fn copy_range(&self, ci: CopyIndex) -> Option<std::ops::Range<usize>> {
        self.blocks.iter().find(|b| b.copy == ci).map(|b| b.offset..b.offset + b.real.dim())
    }

    /// Index in `big` of each coordinate of `self`, where the copies of
    /// `self` sit at `positions` (one per copy, canonical order).
    pub fn embedding_into(&self, big: &FunctorInstance, positions: &[CopyIndex]) -> Vec<usize> {
        let copies = self.functor.copies();
        assert_eq!(copies.len(), positions.len(), "one position per copy");
        self.coords
            .iter()
            .map(|c| {
                let at = positions[copies.iter().position(|&x| x == c.copy_index()).expect("copy")];
                let label = CoordLabel { summand: at.summand, copy: at.copy, tableau: c.tableau.clone() };
                big.index_of(&label).expect("coordinate present in the larger instance")
            })
            .collect()
    }

    /// Matrix of `E_ab` (1-based) on `P(K^n)`, as sparse columns
    /// `(row, value)` per source coordinate.
    pub fn lie_columns(&self, a: u8, b: u8) -> Vec<Vec<(usize, Q)>> {
        let mut cols = vec![Vec::new(); self.dim()];
        let mut cache: HashMap<usize, Vec<Vec<Q>>> = HashMap::new();
        for blk in &self.blocks {
            let m = cache.entry(blk.copy.summand).or_insert_with(|| blk.real.lie_matrix(a, b));
            for (t, col) in cols[blk.offset..blk.offset + blk.real.dim()].iter_mut().enumerate() {
                for (s, row) in m.iter().enumerate() {
                    if !row[t].is_zero() {
                        col.push((blk.offset + s, row[t].clone()));
                    }
                }
            }
        }
        cols
    }
}

/// Matrix of `P(φ): P(K^m) → P(K^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMapMatrix<R> {
    pub source_n: usize,
    pub target_n: usize,
    pub entries: Vec<Vec<R>>,
}

impl<R: RingElem> LinearMapMatrix<R> {
    pub fn apply(&self, x: &[R], zero: &R) -> Vec<R> {
        self.entries
            .iter()
            .map(|row| {
                let mut acc = zero.clone();
                for (a, b) in row.iter().zip(x) {
                    if !a.r_is_zero() && !b.r_is_zero() {
                        acc = acc.r_add(&a.r_mul(b));
                    }
                }
                acc
            })
            .collect()
    }
}

/// `P(φ)` for `φ ∈ Hom(K^m, K^n)` given as `n` rows of length `m`; `zero`
/// fixes the coefficient ring when `φ` has no entries.
pub fn apply_map<R: RingElem>(
    p: &PolynomialFunctor,
    phi: &[Vec<R>],
    m: usize,
    zero: &R,
) -> Result<LinearMapMatrix<R>, SchurError> {
    let n = phi.len();
    if phi.iter().any(|r| r.len() != m) {
        return Err(SchurError::ShapeMismatch(format!("expected {} columns", m)));
    }
    let src = FunctorInstance::new(p, m)?;
    let tgt = FunctorInstance::new(p, n)?;
    let mut entries = vec![vec![zero.clone(); src.dim()]; tgt.dim()];
    let mut cache: HashMap<usize, Vec<Vec<R>>> = HashMap::new();
    for (sb, tb) in src.blocks.iter().zip(&tgt.blocks) {
        let block = cache.entry(sb.copy.summand).or_insert_with(|| tb.real.induced(&sb.real, phi, zero));
        for (i, row) in block.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                entries[tb.offset + i][sb.offset + j] = v.clone();
            }
        }
    }
    Ok(LinearMapMatrix { source_n: m, target_n: n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::Partition;

    fn q(v: i64) -> Q {
        Q::from(v)
    }

    fn f(s: &str) -> PolynomialFunctor {
        PolynomialFunctor::parse(s).unwrap()
    }

    #[test]
    fn spec_dimensions() {
        assert_eq!(FunctorInstance::new(&f("S[3]"), 3).unwrap().dim(), 10);
        assert_eq!(FunctorInstance::new(&f("S[1,1]"), 3).unwrap().dim(), 3);
        assert_eq!(FunctorInstance::new(&f("S[2,1]"), 2).unwrap().dim(), 2);
        assert_eq!(FunctorInstance::new(&f("S[1,1,1]"), 2).unwrap().dim(), 0);
    }

    #[test]
    fn coordinate_names() {
        let inst = FunctorInstance::new(&f("2*S[1]"), 2).unwrap();
        assert_eq!(inst.names("y"), vec!["y.0.0.1", "y.0.0.2", "y.0.1.1", "y.0.1.2"]);
    }

    #[test]
    fn sym2_of_shear() {
        // tensor convention: φ e1 = e1, φ e2 = e1 + e2
        let phi = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        let m = apply_map(&PolynomialFunctor::schur(Partition::row(2)), &phi, 2, &q(0)).unwrap();
        // basis b_11, b_12, b_22; φ·b_22 = b_11 + b_12 + b_22
        assert_eq!(m.entries, vec![vec![q(1), q(2), q(1)], vec![q(0), q(1), q(1)], vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn scalar_acts_by_degree() {
        let p = f("S[2,1] + S[1]");
        let phi = vec![vec![q(3), q(0)], vec![q(0), q(3)]];
        let m = apply_map(&p, &phi, 2, &q(0)).unwrap();
        let w = FunctorInstance::new(&p, 2).unwrap().weights();
        for (i, row) in m.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { q(3).pow(w[i]) } else { q(0) };
                assert_eq!(v, &expect);
            }
        }
    }
}
