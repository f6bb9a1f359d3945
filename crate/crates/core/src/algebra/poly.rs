//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms are kept in canonical form: no zero coefficients, distinct
//! exponent vectors, sorted descending by degree-reverse-lexicographic order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use super::order::MonomialOrder;
use super::scalar::{Field, Q};

pub type Exps = Vec<u32>;

#[derive(Clone, Debug)]
pub struct Poly<F> {
    nvars: usize,
    terms: Vec<(Exps, F)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

fn drl_desc(a: &Exps, b: &Exps) -> Ordering {
    MonomialOrder::DegRevLex.cmp(b, a)
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly { nvars, terms: vec![(e, F::one())] }
    }

    pub fn monomial(nvars: usize, exps: Exps, c: F) -> Self {
        debug_assert_eq!(exps.len(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    /// Builds a polynomial from arbitrary terms (duplicates are merged).
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, F)>) -> Self {
        let mut map: HashMap<Exps, F> = HashMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            match map.get_mut(&e) {
                Some(v) => *v = v.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::from_map(nvars, map)
    }

    fn from_map(nvars: usize, map: HashMap<Exps, F>) -> Self {
        let mut terms: Vec<(Exps, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| drl_desc(&a.0, &b.0));
        Poly { nvars, terms }
    }

    /// Terms already sorted descending by drl with no duplicates.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Exps, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| drl_desc(&w[0].0, &w[1].0) == Ordering::Less));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exps, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    pub fn constant_coeff(&self) -> F {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => F::zero(),
        }
    }

    /// Leading coefficient under the canonical (drl) order.
    pub fn leading_coeff(&self) -> F {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(F::zero)
    }

    pub fn leading_exps(&self) -> Option<&Exps> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> F {
        self.terms
            .iter()
            .find(|(e, _)| e.as_slice() == exps)
            .map(|t| t.1.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    /// Total degree restricted to the variables in `vars`.
    pub fn degree_in_set(&self, vars: &[usize]) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| vars.iter().map(|&v| e[v]).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn weighted_degrees(&self, weights: &[u32]) -> Vec<u64> {
        let mut ds: Vec<u64> = self
            .terms
            .iter()
            .map(|(e, _)| e.iter().zip(weights).map(|(&x, &w)| x as u64 * w as u64).sum())
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.weighted_degrees(weights).len() <= 1
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    /// `self + c * other`, by a sorted merge.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        assert_eq!(self.nvars, other.nvars, "ring mismatch in polynomial addition");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match drl_desc(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let v = b[j].1.mul(c);
                    if !v.is_zero() {
                        out.push((b[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].1.add(&b[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let v = t.1.mul(c);
            if !v.is_zero() {
                out.push((t.0.clone(), v));
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ring mismatch in polynomial product");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Exps, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let v = ca.mul(cb);
                match map.get_mut(&e) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        map.insert(e, v);
                    }
                }
            }
        }
        Self::from_map(self.nvars, map)
    }

    /// Multiplication by a single term keeps the order.
    pub fn mul_term(&self, exps: &[u32], c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, v: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                let k = e2[v];
                e2[v] -= 1;
                (e2, c.mul(&F::from_i64(k as i64)))
            });
        Self::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute polynomials (all in a common ring) for the variables.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        self.substitute_into(images.first().map(|p| p.nvars).unwrap_or(0), images)
    }

    /// As [`Poly::substitute`], with the target arity given explicitly so
    /// that polynomials in no variables can be substituted.
    pub fn substitute_into(&self, target_n: usize, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut acc = Poly::zero(target_n);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target_n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-index variables into a ring with `new_nvars` variables; variable
    /// `i` goes to `map[i]`.
    pub fn rename(&self, new_nvars: usize, map: &[usize]) -> Poly<F> {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0u32; new_nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            (ne, c.clone())
        });
        Poly::from_terms(new_nvars, terms)
    }

    /// Append `extra` fresh variables at the end.
    pub fn extend(&self, extra: usize) -> Poly<F> {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.rename(self.nvars + extra, &map)
    }

    /// Drop variables not listed in `keep` (which must not occur).
    pub fn restrict(&self, keep: &[usize]) -> Option<Poly<F>> {
        let mut pos = vec![usize::MAX; self.nvars];
        for (j, &i) in keep.iter().enumerate() {
            pos[i] = j;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; keep.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    if pos[i] == usize::MAX {
                        return None;
                    }
                    ne[pos[i]] = k;
                }
            }
            terms.push((ne, c.clone()));
        }
        Some(Poly::from_terms(keep.len(), terms))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Split as a polynomial in `vars` with coefficients in the remaining
    /// variables. Returns (exponents in `vars`, coefficient) sorted by the
    /// exponent tuple.
    pub fn coefficients_in(&self, vars: &[usize]) -> Vec<(Vec<u32>, Poly<F>)> {
        let mut groups: HashMap<Vec<u32>, Vec<(Exps, F)>> = HashMap::new();
        for (e, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| e[v]).collect();
            let mut rest = e.clone();
            for &v in vars {
                rest[v] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<(Vec<u32>, Poly<F>)> =
            groups.into_iter().map(|(k, ts)| (k, Poly::from_terms(self.nvars, ts))).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Make the leading coefficient (drl) one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly<F>) -> Option<Poly<F>> {
        if d.is_zero() {
            return None;
        }
        let (le, lc) = (&d.terms[0].0, &d.terms[0].1);
        let lci = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, F)> = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            if !e.iter().zip(le).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exps = e.iter().zip(le).map(|(a, b)| a - b).collect();
            let qc = c.mul(&lci);
            rem = rem.add_scaled(&d.mul_term(&qe, &F::one()), &qc.neg());
            quot.push((qe, qc));
        }
        Some(Poly::from_terms(self.nvars, quot))
    }

    /// Human-readable rendering with the given variable names.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let is_const = e.iter().all(|&x| x == 0);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-', '(']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if body.contains(['+', '-']) && !is_const { format!("({})", body) } else { body };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if is_const || body != "1" {
                factors.push(body);
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = names.get(i).cloned().unwrap_or_else(|| format!("v{}", i));
                if x == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{}^{}", name, x));
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

impl Poly<Q> {
    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient (drl).
    pub fn primitive(&self) -> Poly<Q> {
        use num_integer::Integer;
        use num_traits::Zero;
        if self.is_zero() {
            return self.clone();
        }
        let l = Q::lcm_denominators(self.terms.iter().map(|t| &t.1));
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Q::from_big(l, g);
        if self.terms[0].1.is_negative() {
            factor = factor.neg();
        }
        self.scale(&factor)
    }
}
