//! A restricted decomposition of radical ideals into primes.
//!
//! Splits happen on factors exposed by contents, on rational roots of
//! univariate generators, and on zero divisors found as leading
//! coefficients over a maximal independent set. Primality is certified for
//! linear ideals, principal ideals with an irreducibility witness, and
//! ideals that are rational graphs over their independent variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{content_in, gcd};
use super::groebner::GroebnerBasis;
use super::ideal::{basis, saturate, same_ideal};
use super::poly::Poly;
use super::radical::{block_order, leading_coeff_in_block, radical, separant_product};
use super::scalar::{Field, Q};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    /// Reduced drl basis of the component's ideal.
    pub gens: Vec<Poly<Q>>,
    pub certified_prime: bool,
}

/// How a prime ideal was recognised.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimeWitness {
    Zero,
    Linear,
    Irreducible,
    /// Each dependent variable is `x_i = num_i / den_i(u)`, where `num_i`
    /// involves `u` and dependent variables solved further down the list.
    RationalGraph {
        independent: Vec<usize>,
        solutions: Vec<(usize, Poly<Q>, Poly<Q>)>,
    },
}

/// Decompose `√(gens)`. Components that can neither be split nor certified
/// raise [`AlgebraError::DecompositionIncomplete`] unless `assume_prime` is
/// set, in which case they are returned uncertified.
pub fn decompose_restricted(gens: &[Poly<Q>], nvars: usize, assume_prime: bool) -> Result<Vec<Component>, AlgebraError> {
    let mut queue = vec![radical(gens, nvars)?];
    let mut done: Vec<Component> = Vec::new();
    let mut guard = 0usize;
    while let Some(ideal) = queue.pop() {
        guard += 1;
        if guard > 500 {
            return Err(AlgebraError::DecompositionIncomplete("too many splits".into()));
        }
        let gb = basis(&ideal, nvars);
        if gb.is_unit() {
            continue;
        }
        if prime_witness(&gb).is_some() {
            done.push(Component { gens: gb.polys(), certified_prime: true });
            continue;
        }
        match split(&gb)? {
            Some((a, b)) => {
                queue.push(radical(&b, nvars)?);
                queue.push(radical(&a, nvars)?);
            }
            None if assume_prime => done.push(Component { gens: gb.polys(), certified_prime: false }),
            None => {
                let names: Vec<String> = (0..nvars).map(|i| format!("v{}", i)).collect();
                let shown: Vec<String> = gb.polys().iter().map(|p| p.display(&names)).collect();
                return Err(AlgebraError::DecompositionIncomplete(format!("({})", shown.join(", "))));
            }
        }
    }
    // drop components containing another component (smaller varieties)
    let bases: Vec<GroebnerBasis<Q>> = done.iter().map(|c| basis(&c.gens, nvars)).collect();
    let mut keep = vec![true; done.len()];
    for i in 0..done.len() {
        for j in 0..done.len() {
            if i == j || !keep[j] {
                continue;
            }
            let j_in_i = done[j].gens.iter().all(|g| bases[i].contains(g));
            if j_in_i && (bases[i] != bases[j] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut out: Vec<Component> = done.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    out.sort_by(|a, b| format!("{:?}", a.gens).cmp(&format!("{:?}", b.gens)));
    Ok(out)
}

/// Try to certify that the ideal with reduced basis `gb` is prime.
pub fn prime_witness(gb: &GroebnerBasis<Q>) -> Option<PrimeWitness> {
    if gb.is_unit() {
        return None;
    }
    if gb.is_zero_ideal() {
        return Some(PrimeWitness::Zero);
    }
    let polys = gb.polys();
    if polys.iter().all(|p| p.total_degree() <= 1) {
        return Some(PrimeWitness::Linear);
    }
    if polys.len() == 1 && is_irreducible(&polys[0]) {
        return Some(PrimeWitness::Irreducible);
    }
    rational_graph(gb)
}

/// Sufficient irreducibility tests: linear in some variable with coprime
/// coefficients, or univariate of degree at most three without rational
/// roots.
pub fn is_irreducible(f: &Poly<Q>) -> bool {
    if f.is_constant() {
        return false;
    }
    let support = f.support();
    if support.len() == 1 {
        let d = f.total_degree();
        if d == 1 {
            return true;
        }
        return d <= 3 && rational_roots(f, support[0]).is_empty();
    }
    for v in support {
        if f.degree_in(v) == 1 {
            let parts = f.coefficients_in(&[v]);
            let a = parts.iter().find(|(k, _)| k[0] == 1).map(|(_, c)| c.clone()).unwrap_or_else(|| Poly::zero(f.nvars()));
            let b = parts.iter().find(|(k, _)| k[0] == 0).map(|(_, c)| c.clone()).unwrap_or_else(|| Poly::zero(f.nvars()));
            if gcd(&a, &b).is_constant() {
                return true;
            }
        }
    }
    false
}

fn rational_graph(gb: &GroebnerBasis<Q>) -> Option<PrimeWitness> {
    let n = gb.nvars();
    let dim = gb.dimension().max(0) as usize;
    let leads = gb.leading_monomials();
    // variables leading a linear generator are never independent
    let pinned: Vec<usize> = leads.iter().filter(|m| m.iter().sum::<u32>() == 1).filter_map(|m| m.iter().position(|&e| e == 1)).collect();
    let open: Vec<usize> = (0..n).filter(|v| !pinned.contains(v)).collect();
    let candidates = combinations(open.len(), dim).into_iter().map(|c| c.into_iter().map(|i| open[i]).collect::<Vec<_>>());
    // sets carrying no leading monomial first
    let free = |u: &Vec<usize>| !leads.iter().any(|m| m.iter().enumerate().all(|(v, &e)| e == 0 || u.contains(&v)));
    let (first, rest): (Vec<_>, Vec<_>) = candidates.partition(free);
    let mut tried = 0;
    for u in first.into_iter().chain(rest) {
        tried += 1;
        if tried > 64 {
            return None;
        }
        if let Some(w) = rational_graph_over(gb, &u) {
            return Some(w);
        }
    }
    None
}

/// Subsets of `0..n` of size `k`, preferring later variables.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out.reverse();
    out
}

fn rational_graph_over(gb: &GroebnerBasis<Q>, u: &[usize]) -> Option<PrimeWitness> {
    let n = gb.nvars();
    let (x, order) = block_order(n, u);
    let ob = GroebnerBasis::new(gb.polys(), order, n);
    if ob.polys().iter().any(|p| x.iter().all(|&v| !p.uses_var(v))) {
        return None;
    }
    let polys = ob.polys();
    let x_lead = |p: &Poly<Q>| -> Vec<u32> {
        let lead = p.terms().iter().map(|t| &t.0).max_by(|a, b| ob.order().cmp(a, b)).expect("nonzero");
        x.iter().map(|&v| lead[v]).collect()
    };
    let mut solutions = Vec::new();
    for (i, &xi) in x.iter().enumerate() {
        let lin = polys.iter().find(|p| x_lead(p).iter().enumerate().all(|(j, &e)| e == u32::from(i == j)))?;
        let parts = lin.coefficients_in(&[xi]);
        let a = parts.iter().find(|(k, _)| k[0] == 1).map(|(_, c)| c.clone())?;
        let b = parts.iter().find(|(k, _)| k[0] == 0).map(|(_, c)| c.clone()).unwrap_or_else(|| Poly::zero(n));
        solutions.push((xi, b.neg(), a));
    }
    // the graph is prime iff I is saturated with respect to the denominators
    let h = separant_product(&ob, &x);
    if !h.is_constant() {
        let sat = saturate(&gb.polys(), &h, n);
        if !same_ideal(&sat, &gb.polys(), n) {
            return None;
        }
    }
    Some(PrimeWitness::RationalGraph { independent: u.to_vec(), solutions })
}

type Split = (Vec<Poly<Q>>, Vec<Poly<Q>>);

/// A split `I = √(A) ∩ √(B)` with both strictly larger than `I`.
fn split(gb: &GroebnerBasis<Q>) -> Result<Option<Split>, AlgebraError> {
    let n = gb.nvars();
    let polys = gb.polys();
    let with = |f: &Poly<Q>| {
        let mut v = polys.clone();
        v.push(f.clone());
        v
    };
    for f in &polys {
        // content splits
        for v in f.support() {
            let c = content_in(f, v);
            if !c.is_constant() {
                let p = f.exact_div(&c).expect("content divides");
                if !gb.contains(&c) && !gb.contains(&p) {
                    return Ok(Some((with(&c), with(&p))));
                }
            }
        }
        // rational roots of univariate generators
        let s = f.support();
        if s.len() == 1 && f.total_degree() > 1 {
            let v = s[0];
            if let Some(r) = rational_roots(f, v).first() {
                let lin = Poly::var(n, v).sub(&Poly::constant(n, r.clone()));
                let rest = f.exact_div(&lin).expect("root divides");
                if !gb.contains(&rest) {
                    return Ok(Some((with(&lin), with(&rest))));
                }
            }
        }
    }
    // zero divisors among leading coefficients over an independent set
    let u = gb.max_independent_set();
    let (x, order) = block_order(n, &u);
    let ob = GroebnerBasis::new(polys.clone(), order.clone(), n);
    for g in ob.polys() {
        let c = leading_coeff_in_block(&g, &x, &order);
        if c.is_constant() || gb.contains(&c) {
            continue;
        }
        let sat = saturate(&polys, &c, n);
        if !same_ideal(&sat, &polys, n) {
            return Ok(Some((sat, with(&c))));
        }
    }
    Ok(None)
}

/// Rational roots of `f` viewed as univariate in `v` (other variables
/// must be absent), sorted ascending.
pub fn rational_roots(f: &Poly<Q>, v: usize) -> Vec<Q> {
    let d = f.degree_in(v) as usize;
    let mut coeffs = vec![Q::zero(); d + 1];
    for (e, c) in f.terms() {
        coeffs[e[v] as usize] = c.clone();
    }
    let l = Q::lcm_denominators(coeffs.iter());
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Q::zero());
    }
    let a0 = ints[low].abs();
    let an = ints[d].abs();
    let (Some(p_div), Some(q_div)) = (small_divisors(&a0), small_divisors(&an)) else {
        return roots;
    };
    for p in &p_div {
        for q in &q_div {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Q::from_big(p * BigInt::from(sign), q.clone());
                if ints.iter().rev().fold(Q::zero(), |acc, c| Field::add(&Field::mul(&acc, &r), &Q::from(c.clone()))).is_zero()
                    && !roots.contains(&r)
                {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let m = n.to_u64()?;
    if m > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            out.push(BigInt::from(i));
            if i != m / i {
                out.push(BigInt::from(m / i));
            }
        }
        i += 1;
    }
    Some(out)
}
