//! Oracles shared by the property suites and the acceptance target. Every
//! check returns `Err` with a description instead of panicking, so the
//! acceptance target can report it on one line.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use polyfun::algebra::ideal::{basis, eliminate, is_trivial, membership, same_ideal};
use polyfun::algebra::parse::parse_with_names;
use polyfun::algebra::{radical, Field, Poly, Q};
use polyfun::certify::{certify, CertifyConfig, CertifyStatus};
use polyfun::cli::document::SourceDocument;
use polyfun::geometry::{evaluate_morphism, image_closure_instance, smear, ClosedSubsetRepr, Morphism};
use polyfun::implicitise::{implicitise, Outcome, ScheduleConfig};
use polyfun::parameterise::{Branch, RecursionTrace};
use polyfun::parameterise::parameterise;
use polyfun::schur::shift::shift_multiplicities;
use polyfun::schur::{apply_map, functor_less, lr_shift, ssyt, FunctorInstance, Partition, PolynomialFunctor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

pub const CORPUS: [&str; 4] = ["cubics.pf", "veronese.pf", "qrank.pf", "trio.pf"];

pub fn load(file: &str) -> SourceDocument {
    let text = std::fs::read_to_string(corpus_dir().join(file)).expect("corpus file");
    SourceDocument::parse(&text).expect("corpus parses")
}

pub fn corpus_morphisms() -> Vec<(String, Morphism)> {
    CORPUS.iter().flat_map(|f| load(f).model.morphisms.into_iter()).collect()
}

pub fn q(v: i64) -> Q {
    Q::from(v)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Q>> {
    (0..rows).map(|_| (0..cols).map(|_| q(r.gen_range(-3..=3))).collect()).collect()
}

/// `a · b` with `b` of shape `inner × cols`; explicit shapes keep
/// products through a zero-dimensional space well defined.
pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, cols: usize) -> Vec<Vec<Q>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// A polynomial with a few terms of total degree at most `deg`.
pub fn random_poly(r: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Poly<Q> {
    let mut out = Poly::zero(nvars);
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let d = r.gen_range(0..=deg);
        for _ in 0..d {
            e[r.gen_range(0..nvars)] += 1;
        }
        out = out.add(&Poly::monomial(nvars, e, q(r.gen_range(-4..=4))));
    }
    out
}

pub fn linear_form(r: &mut ChaCha8Rng, nvars: usize) -> Poly<Q> {
    (0..nvars).fold(Poly::zero(nvars), |acc, v| acc.add(&Poly::var(nvars, v).scale(&q(r.gen_range(-2..=2)))))
}

// ---------------------------------------------------------------- algebra

/// Recombining generators by a unimodular transformation and adding
/// redundant multiples does not change the reduced basis.
pub fn gb_uniqueness(seed: u64) -> Check {
    let mut r = rng(seed);
    let nv = 3;
    let gens: Vec<Poly<Q>> = (0..3).map(|_| random_poly(&mut r, nv, 2, 3)).collect();
    let reference = basis(&gens, nv);
    let mut mixed = gens.clone();
    let m = random_poly(&mut r, nv, 1, 2);
    mixed[0] = mixed[0].add(&mixed[1].mul(&m));
    mixed[2] = mixed[2].sub(&mixed[0].scale(&q(r.gen_range(-3..=3))));
    mixed.push(mixed[1].mul(&random_poly(&mut r, nv, 1, 2)));
    mixed.reverse();
    if basis(&mixed, nv) != reference {
        return Err(format!("seed {}: recombined generators give a different reduced basis", seed));
    }
    for g in &gens {
        if !reference.normal_form(g).is_zero() {
            return Err(format!("seed {}: generator does not reduce to zero", seed));
        }
    }
    let inside = gens[0].mul(&m).add(&gens[2].scale(&q(5)));
    let outside = random_poly(&mut r, nv, 2, 3);
    for f in [inside, outside] {
        if reference.normal_form(&f).is_zero() != membership(&f, &gens) {
            return Err(format!("seed {}: normal form and membership disagree", seed));
        }
    }
    Ok(())
}

/// Every generator of the computed radical satisfies the Rabinowitsch
/// test and has a power in the ideal; the radical contains the ideal.
pub fn rabinowitsch(seed: u64) -> Check {
    let mut r = rng(seed);
    let nv = 3;
    let (l1, l2, l3) = (linear_form(&mut r, nv), linear_form(&mut r, nv), linear_form(&mut r, nv));
    let gens = vec![l1.pow(2).mul(&l2), l3.pow(2)];
    let rad = radical(&gens, nv).map_err(|e| format!("seed {}: {}", seed, e))?;
    for f in &rad {
        let mut ext: Vec<Poly<Q>> = gens.iter().map(|g| g.extend(1)).collect();
        ext.push(Poly::var(nv + 1, nv).mul(&f.extend(1)).sub(&Poly::one(nv + 1)));
        if !is_trivial(&ext, nv + 1) {
            return Err(format!("seed {}: radical generator fails the Rabinowitsch test", seed));
        }
        if !(1..=4).any(|k| membership(&f.pow(k), &gens)) {
            return Err(format!("seed {}: no power of a radical generator lies in the ideal", seed));
        }
    }
    let gb = basis(&rad, nv);
    if !gens.iter().all(|g| gb.contains(g)) {
        return Err(format!("seed {}: radical does not contain the ideal", seed));
    }
    if !gb.contains(&l3) || !gb.contains(&l1.mul(&l2)) {
        return Err(format!("seed {}: radical misses a known element", seed));
    }
    Ok(())
}

/// Reduced bases of weighted-homogeneous input are homogeneous.
pub fn grading(seed: u64) -> Check {
    let mut r = rng(seed);
    let weights = [1u32, 2, 1];
    let nv = 3;
    let mut gens = Vec::new();
    for target in [2u64, 3] {
        let mut f = Poly::zero(nv);
        for _ in 0..4 {
            let mut e = vec![0u32; nv];
            let mut left = target;
            while left > 0 {
                let v = r.gen_range(0..nv);
                if weights[v] as u64 <= left {
                    e[v] += 1;
                    left -= weights[v] as u64;
                }
            }
            f = f.add(&Poly::monomial(nv, e, q(r.gen_range(1..=4))));
        }
        gens.push(f);
    }
    let gb = basis(&gens, nv);
    for g in gb.polys() {
        if !g.is_homogeneous(&weights) {
            return Err(format!("seed {}: basis element is not homogeneous", seed));
        }
    }
    let probe = random_poly(&mut r, nv, 3, 1);
    if !gb.normal_form(&probe).is_homogeneous(&weights) {
        return Err(format!("seed {}: normal form of a monomial is not homogeneous", seed));
    }
    Ok(())
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<Poly<Q>>]) -> Poly<Q> {
    let n = m.len();
    let nv = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Poly::zero(nv);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<Q>>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Coefficients of `f` as a polynomial in `x`, lowest first.
fn coefficients_in(f: &Poly<Q>, x: usize) -> Vec<Poly<Q>> {
    let deg = f.degree_in(x) as usize;
    let mut out = vec![Poly::zero(f.nvars()); deg + 1];
    for (e, c) in f.terms() {
        let mut e2 = e.clone();
        let k = e2[x] as usize;
        e2[x] = 0;
        out[k] = out[k].add(&Poly::monomial(f.nvars(), e2, c.clone()));
    }
    out
}

/// Sylvester resultant of `f` and `g` in `x`.
pub fn resultant(f: &Poly<Q>, g: &Poly<Q>, x: usize) -> Poly<Q> {
    let (a, b) = (coefficients_in(f, x), coefficients_in(g, x));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let nv = f.nvars();
    let mut rows = vec![vec![Poly::zero(nv); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    det(&rows)
}

/// Elimination output avoids the variable, lies in the ideal, and
/// contains the resultant.
pub fn elimination_vs_resultant(seed: u64) -> Check {
    let mut r = rng(seed);
    let nv = 3;
    let x = 0;
    let with_x = |r: &mut ChaCha8Rng| loop {
        let f = random_poly(r, nv, 2, 3).add(&Poly::var(nv, x).mul(&linear_form(r, nv)));
        if f.degree_in(x) >= 1 {
            return f;
        }
    };
    let (f, g) = (with_x(&mut r), with_x(&mut r));
    let gens = vec![f.clone(), g.clone()];
    let elim = eliminate(&gens, &[x], nv);
    let full = basis(&gens, nv);
    for e in &elim {
        if e.uses_var(x) || !full.contains(e) {
            return Err(format!("seed {}: eliminant uses x or leaves the ideal", seed));
        }
    }
    let res = resultant(&f, &g, x);
    if !basis(&elim, nv).contains(&res) {
        return Err(format!("seed {}: resultant not in the elimination ideal", seed));
    }
    Ok(())
}

// ---------------------------------------------------------------- schur

/// `∏ (n + j − i) / hook(i, j)`.
pub fn hook_content(lambda: &Partition, n: usize) -> u64 {
    let parts = lambda.parts();
    let conj = lambda.conjugate();
    let cols = conj.parts();
    let (mut num, mut den) = (1i128, 1i128);
    for (i, &len) in parts.iter().enumerate() {
        for j in 0..len as usize {
            let content = n as i128 + j as i128 - i as i128;
            let hook = (len as i128 - j as i128 - 1) + (cols[j] as i128 - i as i128 - 1) + 1;
            num *= content;
            den *= hook;
        }
    }
    if num <= 0 {
        0
    } else {
        (num / den) as u64
    }
}

pub fn partitions_up_to(size: u32) -> Vec<Partition> {
    (1..=size).flat_map(Partition::all_of_size).collect()
}

pub fn ssyt_vs_weyl() -> Check {
    for lambda in partitions_up_to(5) {
        for n in 1..=5 {
            let count = ssyt(&lambda, n).len() as u64;
            let (hc, weyl) = (hook_content(&lambda, n), lambda.weyl_dimension(n));
            if count != hc || weyl != hc {
                return Err(format!("S{} at n = {}: {} tableaux, Weyl {}, hook-content {}", lambda, n, count, weyl, hc));
            }
            let inst = FunctorInstance::new(&PolynomialFunctor::schur(lambda.clone()), n).map_err(|e| e.to_string())?;
            if inst.dim() as u64 != count {
                return Err(format!("S{} at n = {}: instance of dimension {}", lambda, n, inst.dim()));
            }
        }
    }
    Ok(())
}

/// `dim S_λ(K^{k+n}) = dim S_λ(K^k) + Σ_ν m_ν dim S_ν(K^n)`, both from the
/// multiplicities and from the functor-level decomposition.
pub fn lr_shift_dimensions() -> Check {
    for lambda in partitions_up_to(4) {
        for k in 1..=3 {
            let mult = shift_multiplicities(&lambda, k);
            let p = PolynomialFunctor::schur(lambda.clone());
            let shifted = lr_shift(&p, k).map_err(|e| e.to_string())?;
            for n in 1..=3 {
                let total = hook_content(&lambda, k + n);
                let split = hook_content(&lambda, k) + mult.iter().map(|(nu, m)| m * hook_content(nu, n)).sum::<u64>();
                let functor_level = shifted.base_dim() as u64 + shifted.pure_part().dim(n);
                if total != split || total != functor_level {
                    return Err(format!("S{} shifted by K^{} at n = {}: {} vs {} vs {}", lambda, k, n, total, split, functor_level));
                }
            }
        }
    }
    Ok(())
}

/// The cached change of basis block-diagonalises `P(id_U ⊕ φ)`.
pub fn shift_witness_conjugates(seed: u64) -> Check {
    let mut r = rng(seed);
    for (text, k, n) in [("S[2]", 1, 2), ("S[2,1]", 1, 2), ("S[3] + S[1]", 2, 1)] {
        let p = PolynomialFunctor::parse(text).map_err(|e| e.to_string())?;
        let sh = lr_shift(&p, k).map_err(|e| e.to_string())?;
        let w = sh.witness(n).map_err(|e| e.to_string())?;
        let phi = random_matrix(&mut r, n, n);
        let mut big = vec![vec![q(0); k + n]; k + n];
        for i in 0..k {
            big[i][i] = q(1);
        }
        for i in 0..n {
            for j in 0..n {
                big[k + i][k + j] = phi[i][j].clone();
            }
        }
        let lhs_map = apply_map(&p, &big, k + n, &q(0)).map_err(|e| e.to_string())?.entries;
        let pure = apply_map(sh.pure_part(), &phi, n, &q(0)).map_err(|e| e.to_string())?.entries;
        let base = sh.base_dim();
        let dim = base + pure.len();
        let mut block = vec![vec![q(0); dim]; dim];
        for i in 0..base {
            block[i][i] = q(1);
        }
        for (i, row) in pure.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                block[base + i][base + j] = v.clone();
            }
        }
        let lhs = mat_mul(&lhs_map, &w.matrix, w.matrix.len(), dim);
        let rhs = mat_mul(&w.matrix, &block, dim, dim);
        if lhs != rhs {
            return Err(format!("{} shifted by K^{} at n = {}: witness does not intertwine", text, k, n));
        }
    }
    Ok(())
}

pub const SMALL_FUNCTORS: [&str; 8] = ["S[1]", "S[2]", "S[1,1]", "S[3]", "S[2,1]", "S[1,1,1]", "S[2] + S[1]", "2*S[1] + S[1,1]"];

/// `P(φψ) = P(φ)P(ψ)`.
pub fn functoriality(seed: u64) -> Check {
    let mut r = rng(seed);
    let text = SMALL_FUNCTORS[r.gen_range(0..SMALL_FUNCTORS.len())];
    let p = PolynomialFunctor::parse(text).map_err(|e| e.to_string())?;
    let (m, l, n) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
    let psi = random_matrix(&mut r, l, m);
    let phi = random_matrix(&mut r, n, l);
    let composite = mat_mul(&phi, &psi, l, m);
    let whole = apply_map(&p, &composite, m, &q(0)).map_err(|e| e.to_string())?;
    let a = apply_map(&p, &phi, l, &q(0)).map_err(|e| e.to_string())?;
    let b = apply_map(&p, &psi, m, &q(0)).map_err(|e| e.to_string())?;
    let dim = |k: usize| FunctorInstance::new(&p, k).map(|i| i.dim()).map_err(|e| e.to_string());
    let product = mat_mul(&a.entries, &b.entries, dim(l)?, dim(m)?);
    if whole.entries != product {
        return Err(format!("seed {}: {} with {}x{} then {}x{} is not functorial", seed, text, l, m, n, l));
    }
    Ok(())
}

/// Linear polynomials `P(φ)x` on the coordinates `x` of `P(K^m)`, after
/// `k` untouched base variables.
fn linear_images(map: &[Vec<Q>], k: usize, nv: usize) -> Vec<Poly<Q>> {
    let mut out: Vec<Poly<Q>> = (0..k).map(|v| Poly::var(nv, v)).collect();
    for row in map {
        let mut f = Poly::zero(nv);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                f = f.add(&Poly::var(nv, k + j).scale(c));
            }
        }
        out.push(f);
    }
    out
}

/// `Q(φ) ∘ α_{K^m} = α_{K^n} ∘ (id × P(φ))` as polynomial maps.
pub fn naturality(alpha: &Morphism, seed: u64) -> Check {
    let mut r = rng(seed);
    let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
    let phi = random_matrix(&mut r, n, m);
    let small = evaluate_morphism(alpha, m).map_err(|e| e.to_string())?;
    let large = evaluate_morphism(alpha, n).map_err(|e| e.to_string())?;
    let k = alpha.a.nvars();
    let nv = small.ring.len();
    let p_phi = apply_map(&alpha.p, &phi, m, &q(0)).map_err(|e| e.to_string())?.entries;
    let q_phi = apply_map(&alpha.q, &phi, m, &q(0)).map_err(|e| e.to_string())?.entries;
    let images = linear_images(&p_phi, k, nv);
    for (i, row) in q_phi.iter().enumerate() {
        let lhs = row.iter().zip(&small.fibre).fold(Poly::zero(nv), |acc, (c, f)| acc.add(&f.scale(c)));
        let rhs = large.fibre[i].substitute_into(nv, &images);
        if lhs != rhs {
            return Err(format!("seed {}: coordinate {} differs for K^{} -> K^{}", seed, i, m, n));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- geometry

/// `f_i ∘ (id_B × Q(φ))` reduces to zero modulo the smear at `K^n`.
pub fn smear_consistency(x: &ClosedSubsetRepr, n: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let gens = smear(x, n).map_err(|e| e.to_string())?;
    let k = x.nbase();
    let nv = k + FunctorInstance::new(&x.q, n).map_err(|e| e.to_string())?.dim();
    let gb = basis(&gens, nv);
    let phi = random_matrix(&mut r, x.u_dim, n);
    let q_phi = apply_map(&x.q, &phi, n, &q(0)).map_err(|e| e.to_string())?.entries;
    let images = linear_images(&q_phi, k, nv);
    for f in &x.equations {
        if !gb.contains(&f.substitute_into(nv, &images)) {
            return Err(format!("seed {}: pulled-back equation not in the smear at n = {}", seed, n));
        }
    }
    Ok(())
}

/// The closure equations at `K^{n+1}`, smeared down to `K^n`, vanish on
/// the closure at `K^n`.
pub fn pullback_consistency(alpha: &Morphism, n: usize) -> Check {
    let upper = image_closure_instance(alpha, n + 1).map_err(|e| e.to_string())?;
    let lower = image_closure_instance(alpha, n).map_err(|e| e.to_string())?;
    let x = ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), n + 1, upper.gens.clone()).map_err(|e| e.to_string())?;
    let down = smear(&x, n).map_err(|e| e.to_string())?;
    let gb = lower.groebner();
    if !down.iter().all(|f| gb.contains(f)) {
        return Err(format!("smear of the K^{} closure does not vanish on the K^{} closure", n + 1, n));
    }
    Ok(())
}

/// Independent re-check of every recursion edge.
pub fn trace_monotone(trace: &RecursionTrace) -> Check {
    trace.check()?;
    let entries = trace.entries();
    for (i, e) in entries.iter().enumerate() {
        let (Some(p), Some(via)) = (e.parent, e.via) else { continue };
        let parent = &entries[p];
        match via {
            Branch::Exit2 | Branch::ShiftCall => {
                if !functor_less(&e.functor, &parent.functor) || e.functor == parent.functor {
                    return Err(format!("edge {} -> {} does not lower the functor", p, i));
                }
            }
            Branch::DerivativeCall => {
                if e.functor != parent.functor {
                    return Err(format!("derivative edge {} -> {} changes the functor", p, i));
                }
                let nv = parent.projection.first().or(e.projection.first()).map(|g| g.nvars());
                let grew = match nv {
                    Some(nv) => !same_ideal(&e.projection, &parent.projection, nv),
                    None => false,
                };
                let dropped = e.x_degree < parent.x_degree;
                if !(grew || dropped) {
                    return Err(format!("derivative edge {} -> {}: neither ideal growth nor degree drop", p, i));
                }
                if let Some(nv) = nv {
                    let child = basis(&e.projection, nv);
                    if !parent.projection.iter().all(|g| child.contains(g)) {
                        return Err(format!("derivative edge {} -> {}: projection shrank", p, i));
                    }
                }
            }
            Branch::Exit1 => return Err(format!("exit1 recorded as an edge {} -> {}", p, i)),
        }
    }
    Ok(())
}

/// Ideal of a finite union: intersection of the ideals.
pub fn union_ideal(parts: &[Vec<Poly<Q>>], nv: usize) -> Vec<Poly<Q>> {
    let mut it = parts.iter();
    let Some(first) = it.next() else { return vec![Poly::one(nv)] };
    it.fold(first.clone(), |acc, p| polyfun::algebra::intersect(&acc, p, nv))
}

/// The union of the component image closures equals the instance
/// equations, for every `n` up to `max_n`.
pub fn parameterise_complete(x: &ClosedSubsetRepr, max_n: usize) -> Check {
    let res = parameterise(x).map_err(|e| e.to_string())?;
    trace_monotone(&res.trace)?;
    for n in 0..=max_n {
        let want = polyfun::geometry::instance_equations(x, n).map_err(|e| e.to_string())?;
        let nv = want.nvars();
        let parts: Vec<Vec<Poly<Q>>> = res
            .components
            .iter()
            .map(|b| image_closure_instance(b, n).map(|v| v.gens))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let got = union_ideal(&parts, nv);
        if !same_ideal(&got, &want.gens, nv) {
            return Err(format!("union of {} component closures differs from the instance at n = {}", parts.len(), n));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- certify

pub fn self_inclusion(alpha: &Morphism) -> Check {
    let cfg = CertifyConfig { max_d1: Some(0), greenberg: None };
    match certify(alpha, alpha, cfg).map_err(|e| e.to_string())? {
        CertifyStatus::Certified(c) if c.d1() == 0 => Ok(()),
        CertifyStatus::Certified(c) => Err(format!("certified only at d1 = {}", c.d1())),
        other => Err(format!("not certified at d1 = 0: {:?}", std::mem::discriminant(&other))),
    }
}

/// Smear ideals of two implicitisations agree at `K^1 … K^max_n`.
/// Run the scheduler with tasks up to `schedule_n` and `max_d1 = 2` under
/// each budget and compare the smeared results at `1..=max_n`.
pub fn budget_independent(alpha: &Morphism, budgets: &[u64], schedule_n: usize, max_n: usize) -> Check {
    let mut reference: Option<Vec<Vec<Poly<Q>>>> = None;
    for &b in budgets {
        let cfg = ScheduleConfig::new(b, schedule_n, CertifyConfig { max_d1: Some(2), greenberg: None }).map_err(|e| e.to_string())?;
        let Outcome::Found(found) = implicitise(alpha, &cfg).map_err(|e| e.to_string())? else {
            return Err(format!("cap reached with {} steps per round", b));
        };
        let x = ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), found.u_dim, found.equations.gens.clone()).map_err(|e| e.to_string())?;
        let ideals: Vec<Vec<Poly<Q>>> = (1..=max_n).map(|n| smear(&x, n)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        match &reference {
            None => reference = Some(ideals),
            Some(prev) => {
                for (n, (a, c)) in prev.iter().zip(&ideals).enumerate() {
                    let nv = a.first().or(c.first()).map_or(0, |p| p.nvars());
                    if nv > 0 && !same_ideal(a, c, nv) {
                        return Err(format!("{} steps per round: different subset at n = {}", b, n + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- oracles for the examples

/// Polynomial for a coordinate name in `names`.
pub fn coord(names: &[String], name: &str) -> Poly<Q> {
    parse_with_names(name, names).unwrap_or_else(|e| panic!("{}: {}", name, e))
}

/// Label of the monomial coordinate with the given sorted indices.
fn label(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect()
}

/// 2×2 minors of the symmetric 3×3 matrix on `S²(K³)`.
pub fn symmetric_minors(names: &[String]) -> Vec<Poly<Q>> {
    let entry = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        coord(names, &format!("y.0.0.{}", label(&[a, b])))
    };
    let mut out = Vec::new();
    for r in [(0, 1), (0, 2), (1, 2)] {
        for c in [(0, 1), (0, 2), (1, 2)] {
            let m = vec![vec![entry(r.0, c.0), entry(r.0, c.1)], vec![entry(r.1, c.0), entry(r.1, c.1)]];
            let d = det(&m);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// 3×3 minors of the `3 × 6` catalecticant of a ternary cubic: rows by one
/// index, columns by pairs.
pub fn catalecticant_minors(names: &[String]) -> Vec<Poly<Q>> {
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|j| (j..3).map(move |k| (j, k))).collect();
    let entry = |i: usize, (j, k): (usize, usize)| {
        let mut idx = [i, j, k];
        idx.sort();
        coord(names, &format!("y.0.0.{}", label(&idx)))
    };
    let mut out = Vec::new();
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            for c in b + 1..pairs.len() {
                let m: Vec<Vec<Poly<Q>>> = (0..3).map(|i| vec![entry(i, pairs[a]), entry(i, pairs[b]), entry(i, pairs[c])]).collect();
                let d = det(&m);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Each side's generators lie in the other's ideal.
pub fn two_way_membership(a: &[Poly<Q>], b: &[Poly<Q>], nv: usize) -> Check {
    let (ga, gb) = (basis(a, nv), basis(b, nv));
    if let Some(i) = a.iter().position(|f| !gb.contains(f)) {
        return Err(format!("generator {} of the first list is not in the second ideal", i));
    }
    if let Some(i) = b.iter().position(|f| !ga.contains(f)) {
        return Err(format!("generator {} of the second list is not in the first ideal", i));
    }
    Ok(())
}
