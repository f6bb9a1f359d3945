//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy, written as a resumable state machine so that a
//! scheduler can interleave several computations pair by pair.
//!
//! Internally a polynomial keeps its exponent vectors in one contiguous
//! buffer, and reduction accumulates into geometric buckets.

use std::cmp::Ordering;

use super::order::MonomialOrder;
use super::poly::{Exps, Poly};
use super::scalar::Field;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn mask(e: &[u32]) -> u64 {
    e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |m, (i, _)| m | 1 << (i % 64))
}

/// Monomial comparison with a fast path for the graded reverse
/// lexicographic order using cached degrees.
fn cmp_mono(order: &MonomialOrder, a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    match order {
        MonomialOrder::DegRevLex => da.cmp(&db).then_with(|| {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }),
        _ => order.cmp(a, b),
    }
}

/// Terms of one polynomial in a fixed order (descending unless stated).
#[derive(Clone, Debug, PartialEq)]
struct Packed<F> {
    nv: usize,
    exps: Vec<u32>,
    degs: Vec<u32>,
    coeffs: Vec<F>,
}

impl<F: Field> Packed<F> {
    fn with_capacity(nv: usize, n: usize) -> Self {
        Packed { nv, exps: Vec::with_capacity(n * nv), degs: Vec::with_capacity(n), coeffs: Vec::with_capacity(n) }
    }

    fn len(&self) -> usize {
        self.coeffs.len()
    }

    fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn exps(&self, i: usize) -> &[u32] {
        &self.exps[i * self.nv..(i + 1) * self.nv]
    }

    fn push(&mut self, e: &[u32], d: u32, c: F) {
        self.exps.extend_from_slice(e);
        self.degs.push(d);
        self.coeffs.push(c);
    }

    fn push_shifted(&mut self, e: &[u32], d: u32, shift: &[u32], ds: u32, c: F) {
        self.exps.extend(e.iter().zip(shift).map(|(x, y)| x + y));
        self.degs.push(d + ds);
        self.coeffs.push(c);
    }

    fn from_poly(order: &MonomialOrder, p: &Poly<F>) -> Self {
        let nv = p.nvars();
        let mut idx: Vec<usize> = (0..p.len()).collect();
        let t = p.terms();
        if *order != MonomialOrder::DegRevLex {
            idx.sort_by(|&a, &b| order.cmp(&t[b].0, &t[a].0));
        }
        let mut out = Packed::with_capacity(nv, t.len());
        for i in idx {
            out.push(&t[i].0, deg(&t[i].0), t[i].1.clone());
        }
        out
    }

    fn to_poly(&self, order: &MonomialOrder) -> Poly<F> {
        let terms = (0..self.len()).map(|i| (self.exps(i).to_vec(), self.coeffs[i].clone()));
        if *order == MonomialOrder::DegRevLex {
            Poly::from_sorted_terms(self.nv, terms.collect())
        } else {
            Poly::from_terms(self.nv, terms)
        }
    }

    fn is_constant(&self) -> bool {
        self.len() == 1 && self.degs[0] == 0
    }

    fn make_monic(&mut self) {
        if self.is_empty() || self.coeffs[0].is_one() {
            return;
        }
        let inv = self.coeffs[0].inv().expect("nonzero leading coefficient");
        for c in self.coeffs.iter_mut() {
            *c = c.mul(&inv);
        }
    }
}

/// Merge two ascending term lists.
fn merge_ascending<F: Field>(order: &MonomialOrder, a: Packed<F>, b: Packed<F>) -> Packed<F> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Packed::with_capacity(a.nv, a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp_mono(order, a.exps(i), a.degs[i], b.exps(j), b.degs[j]) {
            Ordering::Less => {
                out.push(a.exps(i), a.degs[i], a.coeffs[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b.exps(j), b.degs[j], b.coeffs[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = a.coeffs[i].add(&b.coeffs[j]);
                if !c.is_zero() {
                    out.push(a.exps(i), a.degs[i], c);
                }
                i += 1;
                j += 1;
            }
        }
    }
    for k in i..a.len() {
        out.push(a.exps(k), a.degs[k], a.coeffs[k].clone());
    }
    for k in j..b.len() {
        out.push(b.exps(k), b.degs[k], b.coeffs[k].clone());
    }
    out
}

/// Geometric buckets of ascending term lists; the leading term of the sum
/// is found among the last entries.
struct Buckets<'o, F> {
    order: &'o MonomialOrder,
    nv: usize,
    slots: Vec<Packed<F>>,
}

impl<'o, F: Field> Buckets<'o, F> {
    fn new(order: &'o MonomialOrder, nv: usize) -> Self {
        Buckets { order, nv, slots: Vec::new() }
    }

    fn add(&mut self, mut p: Packed<F>) {
        let mut i = 0;
        while (4usize << (2 * i)) < p.len() {
            i += 1;
        }
        loop {
            while self.slots.len() <= i {
                self.slots.push(Packed::with_capacity(self.nv, 0));
            }
            let cur = std::mem::replace(&mut self.slots[i], Packed::with_capacity(self.nv, 0));
            p = merge_ascending(self.order, cur, p);
            if p.len() <= (4usize << (2 * i)) {
                self.slots[i] = p;
                return;
            }
            i += 1;
        }
    }

    /// `-c · x^shift · (g without its head)`, ascending.
    fn add_multiple(&mut self, g: &Packed<F>, shift: &[u32], c: &F) {
        let ds = deg(shift);
        let mut p = Packed::with_capacity(self.nv, g.len().saturating_sub(1));
        let m = c.neg();
        for k in (1..g.len()).rev() {
            p.push_shifted(g.exps(k), g.degs[k], shift, ds, g.coeffs[k].mul(&m));
        }
        self.add(p);
    }

    /// Remove and return the leading term of the sum.
    fn pop_leading(&mut self) -> Option<(Exps, u32, F)> {
        loop {
            let mut best: Option<usize> = None;
            for (i, s) in self.slots.iter().enumerate() {
                if s.is_empty() {
                    continue;
                }
                let last = s.len() - 1;
                best = match best {
                    None => Some(i),
                    Some(b) => {
                        let t = &self.slots[b];
                        let lb = t.len() - 1;
                        if cmp_mono(self.order, s.exps(last), s.degs[last], t.exps(lb), t.degs[lb]) == Ordering::Greater {
                            Some(i)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let b = best?;
            let (e, d) = {
                let s = &self.slots[b];
                (s.exps(s.len() - 1).to_vec(), s.degs[s.len() - 1])
            };
            let mut c = F::zero();
            for s in self.slots.iter_mut() {
                if s.is_empty() {
                    continue;
                }
                let last = s.len() - 1;
                if s.degs[last] == d && s.exps(last) == &e[..] {
                    c = c.add(&s.coeffs[last]);
                    s.coeffs.pop();
                    s.degs.pop();
                    s.exps.truncate(last * s.nv);
                }
            }
            if !c.is_zero() {
                return Some((e, d, c));
            }
        }
    }
}

/// Leading monomials of a basis with their divisibility masks.
struct Leads<'a, F> {
    basis: &'a [Packed<F>],
    masks: &'a [u64],
    active: &'a [bool],
}

impl<F: Field> Leads<'_, F> {
    fn divisor(&self, e: &[u32]) -> Option<usize> {
        let m = mask(e);
        (0..self.basis.len()).find(|&k| self.active[k] && self.masks[k] & !m == 0 && divides(self.basis[k].exps(0), e))
    }
}

/// Full reduction of the sum held in `bucket` (monic basis).
fn reduce_full<F: Field>(mut bucket: Buckets<'_, F>, leads: &Leads<'_, F>) -> Packed<F> {
    let mut rem = Packed::with_capacity(bucket.nv, 0);
    while let Some((e, d, c)) = bucket.pop_leading() {
        match leads.divisor(&e) {
            Some(k) => {
                let g = &leads.basis[k];
                let shift: Exps = e.iter().zip(g.exps(0)).map(|(x, y)| x - y).collect();
                bucket.add_multiple(g, &shift, &c);
            }
            None => rem.push(&e, d, c),
        }
    }
    rem
}

fn ascending<F: Field>(p: &Packed<F>) -> Packed<F> {
    let mut out = Packed::with_capacity(p.nv, p.len());
    for k in (0..p.len()).rev() {
        out.push(p.exps(k), p.degs[k], p.coeffs[k].clone());
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    sugar: u32,
}

/// Outcome of a single engine step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Progress,
    Done,
}

/// Resumable Buchberger computation.
#[derive(Clone, Debug)]
pub struct GroebnerEngine<F> {
    order: MonomialOrder,
    nvars: usize,
    pending: Vec<Packed<F>>,
    basis: Vec<Packed<F>>,
    masks: Vec<u64>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    unit: bool,
    steps: u64,
}

impl<F: Field> GroebnerEngine<F> {
    pub fn new(gens: Vec<Poly<F>>, order: MonomialOrder, nvars: usize) -> Self {
        let mut pending: Vec<Packed<F>> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                assert_eq!(g.nvars(), nvars, "generator ring mismatch");
                Packed::from_poly(&order, &g)
            })
            .collect();
        // process low-degree generators first
        pending.sort_by(|a, b| b.degs[0].cmp(&a.degs[0]).then_with(|| order.cmp(b.exps(0), a.exps(0))));
        GroebnerEngine {
            order,
            nvars,
            pending,
            basis: Vec::new(),
            masks: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            unit: false,
            steps: 0,
        }
    }

    pub fn is_done(&self) -> bool {
        self.unit || (self.pending.is_empty() && self.pairs.is_empty())
    }

    /// True once `1` has been found in the ideal.
    pub fn found_unit(&self) -> bool {
        self.unit
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn step(&mut self) -> StepOutcome {
        if self.is_done() {
            return StepOutcome::Done;
        }
        self.steps += 1;
        let mut bucket = Buckets::new(&self.order, self.nvars);
        let sugar = if let Some(g) = self.pending.pop() {
            let s = g.degs.iter().copied().max().unwrap_or(0);
            bucket.add(ascending(&g));
            s
        } else {
            // select the pair with least sugar, ties by the lcm
            let mut best = 0;
            for k in 1..self.pairs.len() {
                let (a, b) = (&self.pairs[k], &self.pairs[best]);
                let better = a.sugar < b.sugar || (a.sugar == b.sugar && self.order.cmp(&a.lcm, &b.lcm) == Ordering::Less);
                if better {
                    best = k;
                }
            }
            let pr = self.pairs.swap_remove(best);
            // both monic: x^sf f − x^sg g, dropping the cancelled heads
            let (f, g) = (&self.basis[pr.i], &self.basis[pr.j]);
            let sf: Exps = pr.lcm.iter().zip(f.exps(0)).map(|(x, y)| x - y).collect();
            let sg: Exps = pr.lcm.iter().zip(g.exps(0)).map(|(x, y)| x - y).collect();
            bucket.add_multiple(f, &sf, &F::one().neg());
            bucket.add_multiple(g, &sg, &F::one());
            pr.sugar
        };
        let leads = Leads { basis: &self.basis, masks: &self.masks, active: &self.active };
        let mut red = reduce_full(bucket, &leads);
        if red.is_empty() {
            return if self.is_done() { StepOutcome::Done } else { StepOutcome::Progress };
        }
        red.make_monic();
        if red.is_constant() {
            self.unit = true;
            self.masks = vec![0];
            self.basis = vec![red];
            self.active = vec![true];
            self.pairs.clear();
            self.pending.clear();
            return StepOutcome::Done;
        }
        self.insert(red, sugar);
        if self.is_done() {
            StepOutcome::Done
        } else {
            StepOutcome::Progress
        }
    }

    /// Run to completion, or until `max_steps` further steps have been taken.
    pub fn run(&mut self, max_steps: Option<u64>) -> StepOutcome {
        let mut taken = 0u64;
        while !self.is_done() {
            if let Some(m) = max_steps {
                if taken >= m {
                    return StepOutcome::Progress;
                }
            }
            self.step();
            taken += 1;
        }
        StepOutcome::Done
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: Packed<F>, sugar_h: u32) {
        let k = self.basis.len();
        let lh = h.exps(0).to_vec();
        let dh = deg(&lh);
        self.masks.push(mask(&lh));
        self.basis.push(h);
        self.sugar.push(sugar_h);
        self.active.push(true);

        let cands: Vec<usize> = (0..k).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Exps> = cands.iter().map(|&g| lcm(&lh, self.basis[g].exps(0))).collect();
        // chain criterion among new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let la = self.basis[cands[a]].exps(0);
            if coprime(&lh, la) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if divides(&lcms[b], &lcms[a]) && (lcms[b] != lcms[a] || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // among pairs sharing an lcm with a coprime one, drop all
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            let la = self.basis[cands[a]].exps(0);
            if coprime(&lh, la) {
                keep[a] = false;
                for b in 0..cands.len() {
                    if lcms[b] == lcms[a] {
                        keep[b] = false;
                    }
                }
            }
        }
        // old pairs made redundant by h
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !divides(&lh, &p.lcm) {
                return true;
            }
            let l1 = lcm(basis[p.i].exps(0), &lh);
            let l2 = lcm(basis[p.j].exps(0), &lh);
            l1 == p.lcm || l2 == p.lcm
        });
        for (a, &g) in cands.iter().enumerate() {
            if keep[a] {
                let lg = self.basis[g].exps(0);
                let l = lcms[a].clone();
                let dl = deg(&l);
                let s = (self.sugar[g] + dl - deg(lg)).max(sugar_h + dl - dh);
                self.pairs.push(Pair { i: g, j: k, lcm: l, sugar: s });
            }
        }
        for g in cands {
            if divides(&lh, self.basis[g].exps(0)) {
                self.active[g] = false;
            }
        }
    }

    /// Interreduce and package as a reduced basis. Only valid when done.
    pub fn finish(&self) -> GroebnerBasis<F> {
        assert!(self.is_done(), "engine has not converged");
        let mut idx: Vec<usize> = (0..self.basis.len()).filter(|&i| self.active[i]).collect();
        // minimal basis
        idx.sort_by(|&a, &b| self.order.cmp(self.basis[a].exps(0), self.basis[b].exps(0)));
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &idx {
            if !minimal.iter().any(|&j| divides(self.basis[j].exps(0), self.basis[i].exps(0))) {
                minimal.push(i);
            }
        }
        let polys: Vec<Packed<F>> = minimal.iter().map(|&i| self.basis[i].clone()).collect();
        let masks: Vec<u64> = polys.iter().map(|p| mask(p.exps(0))).collect();
        let mut reduced: Vec<Packed<F>> = Vec::with_capacity(polys.len());
        for k in 0..polys.len() {
            let act: Vec<bool> = (0..polys.len()).map(|j| j != k).collect();
            let leads = Leads { basis: &polys, masks: &masks, active: &act };
            let p = &polys[k];
            let mut bucket = Buckets::new(&self.order, self.nvars);
            let mut tail = Packed::with_capacity(self.nvars, p.len() - 1);
            for t in (1..p.len()).rev() {
                tail.push(p.exps(t), p.degs[t], p.coeffs[t].clone());
            }
            bucket.add(tail);
            let rest = reduce_full(bucket, &leads);
            let mut t = Packed::with_capacity(self.nvars, rest.len() + 1);
            t.push(p.exps(0), p.degs[0], p.coeffs[0].clone());
            for j in 0..rest.len() {
                t.push(rest.exps(j), rest.degs[j], rest.coeffs[j].clone());
            }
            t.make_monic();
            reduced.push(t);
        }
        let masks = reduced.iter().map(|p| mask(p.exps(0))).collect();
        GroebnerBasis { order: self.order.clone(), nvars: self.nvars, basis: reduced, masks }
    }
}

/// A reduced Gröbner basis (monic, sorted by increasing leading monomial).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F> {
    order: MonomialOrder,
    nvars: usize,
    basis: Vec<Packed<F>>,
    masks: Vec<u64>,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.nvars == other.nvars && self.basis == other.basis
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn new(gens: Vec<Poly<F>>, order: MonomialOrder, nvars: usize) -> Self {
        let mut e = GroebnerEngine::new(gens, order, nvars);
        e.run(None);
        e.finish()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn polys(&self) -> Vec<Poly<F>> {
        self.basis.iter().map(|t| t.to_poly(&self.order)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Exps> {
        self.basis.iter().map(|t| t.exps(0).to_vec()).collect()
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        assert_eq!(f.nvars(), self.nvars, "normal form: ring mismatch");
        if f.is_zero() || self.basis.is_empty() {
            return f.clone();
        }
        let mut bucket = Buckets::new(&self.order, self.nvars);
        bucket.add(ascending(&Packed::from_poly(&self.order, f)));
        let act = vec![true; self.basis.len()];
        let leads = Leads { basis: &self.basis, masks: &self.masks, active: &act };
        reduce_full(bucket, &leads).to_poly(&self.order)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Leading term of `f` under this basis' order.
    pub fn leading_exps_of(&self, f: &Poly<F>) -> Option<Exps> {
        f.terms()
            .iter()
            .map(|t| &t.0)
            .max_by(|a, b| self.order.cmp(a, b))
            .cloned()
    }

    /// A maximal independent set of variables modulo the leading ideal,
    /// of maximum size (so its size is the Krull dimension).
    pub fn max_independent_set(&self) -> Vec<usize> {
        if self.is_unit() {
            return Vec::new();
        }
        let supports: Vec<Vec<usize>> = self
            .leading_monomials()
            .iter()
            .map(|e| (0..self.nvars).filter(|&i| e[i] > 0).collect())
            .collect();
        let mut best: Vec<usize> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        fn independent(set: &[usize], supports: &[Vec<usize>]) -> bool {
            supports.iter().all(|s| !s.iter().all(|v| set.contains(v)))
        }
        fn search(
            start: usize,
            n: usize,
            cur: &mut Vec<usize>,
            best: &mut Vec<usize>,
            supports: &[Vec<usize>],
        ) {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            if cur.len() + (n - start) <= best.len() {
                return;
            }
            for v in start..n {
                if cur.len() + (n - v) <= best.len() {
                    return;
                }
                cur.push(v);
                if independent(cur, supports) {
                    search(v + 1, n, cur, best, supports);
                }
                cur.pop();
            }
        }
        search(0, self.nvars, &mut cur, &mut best, &supports);
        best
    }

    pub fn dimension(&self) -> isize {
        if self.is_unit() {
            -1
        } else {
            self.max_independent_set().len() as isize
        }
    }

    /// True iff the ideal is zero-dimensional (finitely many points).
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return false;
        }
        let lms = self.leading_monomials();
        (0..self.nvars).all(|v| {
            lms.iter().any(|e| e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Q;

    fn v(n: usize, i: usize) -> Poly<Q> {
        Poly::var(n, i)
    }

    #[test]
    fn already_reduced_basis() {
        let gb = GroebnerBasis::new(vec![v(2, 0), v(2, 1)], MonomialOrder::Lex, 2);
        assert_eq!(gb.polys(), vec![v(2, 1), v(2, 0)]);
    }

    #[test]
    fn zero_ideal() {
        let gb = GroebnerBasis::<Q>::new(vec![], MonomialOrder::DegRevLex, 3);
        assert!(gb.is_zero_ideal());
        assert_eq!(gb.dimension(), 3);
    }

    #[test]
    fn twisted_cubic_lex_contains_cusp_relation() {
        // vars x, y, z with lex x > y > z
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = vec![y.sub(&x.pow(2)), z.sub(&x.pow(3))];
        let gb = GroebnerBasis::new(gens, MonomialOrder::Lex, 3);
        let rel = z.pow(2).sub(&y.pow(3));
        assert!(gb.contains(&rel));
        let elim: Vec<Poly<Q>> = gb.polys().into_iter().filter(|p| !p.uses_var(0)).collect();
        assert_eq!(elim, vec![rel.neg().monic()]);
    }

    #[test]
    fn unit_detected() {
        let x = v(1, 0);
        let gb = GroebnerBasis::new(vec![x.clone(), x.sub(&Poly::one(1))], MonomialOrder::DegRevLex, 1);
        assert!(gb.is_unit());
    }

    #[test]
    fn resumable_engine_matches_batch() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let gens = vec![x.mul(&y).sub(&z), y.mul(&z).sub(&x), x.mul(&z).sub(&y)];
        let full = GroebnerBasis::new(gens.clone(), MonomialOrder::DegRevLex, 3);
        let mut e = GroebnerEngine::new(gens, MonomialOrder::DegRevLex, 3);
        while e.step() == StepOutcome::Progress {}
        assert_eq!(e.finish(), full);
    }
}
