//! Exact linear algebra: sparse elimination, kernels, inverses.

use std::collections::BTreeMap;

use super::poly::Poly;
use super::scalar::{Field, Omega, Q};
use super::AlgebraError;

/// Commutative ring elements that linear maps with rational entries can
/// act on. `zero` takes a template so polynomial rings keep their arity.
pub trait RingElem: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn r_add(&self, other: &Self) -> Self;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_scale(&self, c: &Q) -> Self;
    fn r_is_zero(&self) -> bool;
}

impl RingElem for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }
    fn r_scale(&self, c: &Q) -> Self {
        Field::mul(self, c)
    }
    fn r_is_zero(&self) -> bool {
        Field::is_zero(self)
    }
}

impl RingElem for Omega {
    fn zero_like(&self) -> Self {
        Omega::zero()
    }
    fn one_like(&self) -> Self {
        Omega::one()
    }
    fn r_add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }
    fn r_scale(&self, c: &Q) -> Self {
        Field::mul(self, &Omega::from_q(c))
    }
    fn r_is_zero(&self) -> bool {
        Field::is_zero(self)
    }
}

impl<F: Field> RingElem for Poly<F> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars())
    }
    fn r_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn r_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn r_scale(&self, c: &Q) -> Self {
        self.scale(&F::from_q(c))
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Sparse row: sorted (column, nonzero value).
pub type SparseRow<F> = Vec<(usize, F)>;

/// Incremental row reduction. Rows are kept with distinct leading columns;
/// `finish` back-substitutes to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

fn axpy<F: Field>(a: &SparseRow<F>, c: &F, b: &SparseRow<F>) -> SparseRow<F> {
    // a - c*b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = b[j].1.mul(c).neg();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<F: Field> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` against current pivots (leading terms only).
    fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.pivots.get(&col) {
                let c = row[k].1.clone();
                row = axpy(&row, &c, p);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Add a row; returns true if it increased the rank.
    pub fn push(&mut self, row: SparseRow<F>) -> bool {
        let row: SparseRow<F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv().expect("nonzero pivot");
        for t in r.iter_mut() {
            t.1 = t.1.mul(&inv);
        }
        self.pivots.insert(r[0].0, r);
        true
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).is_empty()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseRow<F>> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for &c in cols.iter().rev() {
            let mut r = self.pivots[&c].clone();
            let mut k = 1;
            while k < r.len() {
                let col = r[k].0;
                if let Some(p) = done.get(&col) {
                    let v = r[k].1.clone();
                    r = axpy(&r, &v, p);
                } else {
                    k += 1;
                }
            }
            done.insert(c, r);
        }
        done.into_values().collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Canonical basis of the null space, in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let rref = self.rref();
        let pivcols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut vecs: Vec<SparseRow<F>> = Vec::new();
        for &f in &free {
            let mut v: SparseRow<F> = vec![(f, F::one())];
            for (r, &pc) in rref.iter().zip(&pivcols) {
                if let Some((_, val)) = r.iter().find(|(c, _)| *c == f) {
                    v.push((pc, val.neg()));
                }
            }
            v.sort_by_key(|t| t.0);
            vecs.push(v);
        }
        let mut red = RowReducer::new(self.ncols);
        for v in vecs {
            red.push(v);
        }
        red.rref().into_iter().map(|r| densify(&r, self.ncols)).collect()
    }
}

pub fn densify<F: Field>(row: &SparseRow<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

pub fn sparsify<F: Field>(row: &[F]) -> SparseRow<F> {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Vec<Vec<F>>, AlgebraError> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| AlgebraError::RingContext("singular matrix".into()))?;
        a.swap(col, p);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&y.mul(&c));
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let n = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut red = RowReducer::new(n);
    for r in rows {
        red.push(sparsify(r));
    }
    red.rank()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            let mut out = vec![F::zero(); m];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] = out[j].add(&x.mul(y));
                    }
                }
            }
            out
        })
        .collect()
}

/// Solve `x · m = target` for a row vector `x`, if solvable.
pub fn solve_left<F: Field>(m: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    // columns of the augmented transposed system
    let rows = m.len();
    let cols = target.len();
    let mut red = RowReducer::new(rows + 1);
    for j in 0..cols {
        let mut r: SparseRow<F> = (0..rows).filter(|&i| !m[i][j].is_zero()).map(|i| (i, m[i][j].clone())).collect();
        if !target[j].is_zero() {
            r.push((rows, target[j].clone()));
        }
        red.push(r);
    }
    let rref = red.rref();
    if rref.iter().any(|r| r[0].0 == rows) {
        return None;
    }
    let mut x = vec![F::zero(); rows];
    for r in &rref {
        if let Some((_, v)) = r.iter().find(|(c, _)| *c == rows) {
            x[r[0].0] = v.clone();
        }
    }
    Some(x)
}
