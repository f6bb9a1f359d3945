//! Multivariate gcd by recursive primitive remainder sequences.

use super::poly::Poly;
use super::scalar::Field;

/// Leading coefficient of `f` viewed as a polynomial in `v`.
fn lc_in<F: Field>(f: &Poly<F>, v: usize) -> Poly<F> {
    let d = f.degree_in(v);
    let terms = f.terms().iter().filter(|(e, _)| e[v] == d).map(|(e, c)| {
        let mut e = e.clone();
        e[v] = 0;
        (e, c.clone())
    });
    Poly::from_terms(f.nvars(), terms)
}

/// Pseudo-remainder of `f` by `g` with respect to `v`.
fn prem<F: Field>(f: &Poly<F>, g: &Poly<F>, v: usize) -> Poly<F> {
    let dg = g.degree_in(v);
    let lg = lc_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() && r.uses_var(v) && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = lc_in(&r, v);
        let mut shift = vec![0u32; f.nvars()];
        shift[v] = dr - dg;
        r = lg.mul(&r).sub(&lr.mul(&g.mul_term(&shift, &F::one())));
        if dg == 0 {
            break;
        }
    }
    r
}

/// Gcd of the coefficients of `f` as a polynomial in `v`.
pub fn content_in<F: Field>(f: &Poly<F>, v: usize) -> Poly<F> {
    let mut g = Poly::zero(f.nvars());
    for (_, c) in f.coefficients_in(&[v]) {
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part_in<F: Field>(f: &Poly<F>, v: usize) -> Poly<F> {
    let c = content_in(f, v);
    if c.is_constant() {
        return f.monic();
    }
    f.exact_div(&c).expect("content divides").monic()
}

/// Monic greatest common divisor (monic in the drl order); `gcd(0,0) = 0`.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let mut vars = a.support();
    vars.extend(b.support());
    let v = *vars.iter().min().expect("nonconstant");
    if !a.uses_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides").monic();
    let pb = b.exact_div(&cb).expect("content divides").monic();
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    let h = loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if !r.uses_var(v) {
            break Poly::one(n);
        }
        f = g;
        g = primitive_part_in(&r, v);
    };
    c.mul(&primitive_part_in(&h, v)).monic()
}

/// Squarefree part: `f / gcd(f, ∂f/∂x_1, …, ∂f/∂x_n)`.
pub fn squarefree_part<F: Field>(f: &Poly<F>) -> Poly<F> {
    if f.is_constant() {
        return f.clone();
    }
    let mut g = f.clone();
    for v in f.support() {
        g = gcd(&g, &f.derivative(v));
        if g.is_constant() {
            return f.monic();
        }
    }
    f.exact_div(&g).expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Q;

    fn x(n: usize, i: usize) -> Poly<Q> {
        Poly::var(n, i)
    }

    #[test]
    fn univariate_gcd() {
        let t = x(1, 0);
        let one = Poly::one(1);
        let a = t.sub(&one).mul(&t.add(&one));
        let b = t.sub(&one).pow(2);
        assert_eq!(gcd(&a, &b), t.sub(&one));
    }

    #[test]
    fn multivariate_gcd_recovers_common_factor() {
        let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
        let common = a.mul(&b).sub(&c.pow(2)).add(&Poly::one(3));
        let f = common.mul(&a.add(&c));
        let g = common.mul(&b.sub(&a).pow(2));
        assert_eq!(gcd(&f, &g), common.monic());
        assert!(gcd(&a.add(&c), &b).is_one());
    }

    #[test]
    fn squarefree_of_powers() {
        let (a, b) = (x(2, 0), x(2, 1));
        let f = a.pow(3).mul(&b.sub(&a).pow(2));
        assert_eq!(squarefree_part(&f), a.mul(&b.sub(&a)).monic());
    }
}
