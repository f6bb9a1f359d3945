//! Affine varieties given by generators, and basic open subsets.

use crate::algebra::ideal::{basis, radical_membership};
use crate::algebra::{is_trivial, radical, GroebnerBasis, Poly, Ring, SpaceTag, Variable, Q};

use super::GeometryError;

#[derive(Clone, Debug, PartialEq)]
pub struct AffineVariety {
    pub ring: Ring,
    pub gens: Vec<Poly<Q>>,
    pub certified_radical: bool,
    pub certified_prime: bool,
}

impl AffineVariety {
    pub fn new(ring: Ring, gens: Vec<Poly<Q>>) -> AffineVariety {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect::<Vec<_>>();
        let trivial = gens.is_empty();
        AffineVariety { ring, gens, certified_radical: trivial, certified_prime: trivial }
    }

    /// The one-point variety.
    pub fn point() -> AffineVariety {
        AffineVariety::new(Ring::default(), Vec::new())
    }

    /// `K^k` with coordinates `prefix.1 … prefix.k`.
    pub fn affine_space(prefix: &str, k: usize) -> AffineVariety {
        let ring = Ring::new((1..=k).map(|i| Variable::base(format!("{}.{}", prefix, i))).collect());
        AffineVariety::new(ring, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.ring.names()
    }

    pub fn is_empty(&self) -> bool {
        is_trivial(&self.gens, self.nvars())
    }

    pub fn groebner(&self) -> GroebnerBasis<Q> {
        basis(&self.gens, self.nvars())
    }

    /// Replace the generators by a reduced basis of their radical.
    pub fn radicalised(&self) -> Result<AffineVariety, GeometryError> {
        if self.certified_radical {
            return Ok(self.clone());
        }
        let gens = radical(&self.gens, self.nvars())?;
        Ok(AffineVariety { ring: self.ring.clone(), gens, certified_radical: true, certified_prime: self.certified_prime })
    }

    /// Whether `f` vanishes on the variety.
    pub fn vanishes(&self, f: &Poly<Q>) -> bool {
        if self.certified_radical {
            basis(&self.gens, self.nvars()).contains(f)
        } else {
            radical_membership(f, &self.gens)
        }
    }

    pub fn with_prime(mut self, prime: bool) -> AffineVariety {
        self.certified_prime = prime;
        if prime {
            self.certified_radical = true;
        }
        self
    }

    pub fn with_radical(mut self, radical: bool) -> AffineVariety {
        self.certified_radical = radical;
        self
    }

    /// Product with affine space on extra coordinates appended to the ring.
    pub fn extend(&self, vars: Vec<Variable>) -> AffineVariety {
        let extra = vars.len();
        let mut ring = self.ring.clone();
        for v in vars {
            ring.push(v);
        }
        AffineVariety {
            ring,
            gens: self.gens.iter().map(|g| g.extend(extra)).collect(),
            certified_radical: self.certified_radical,
            certified_prime: self.certified_prime,
        }
    }
}

/// `B[1/h]` as the closed subvariety `w·h = 1` of `B × K`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedVariety {
    pub base: AffineVariety,
    pub h: Poly<Q>,
    pub witness: usize,
    pub variety: AffineVariety,
}

pub fn localize(b: &AffineVariety, h: &Poly<Q>) -> Result<LocalizedVariety, GeometryError> {
    if h.is_zero() || b.vanishes(h) {
        return Err(GeometryError::EmptyLocalization);
    }
    let mut name = "w".to_string();
    while b.ring.index_of(&name).is_some() {
        name.push('\'');
    }
    let mut variety = b.extend(vec![Variable::new(name, SpaceTag::Witness, 0)]);
    let n = variety.nvars();
    let w = Poly::var(n, n - 1);
    variety.gens.push(w.mul(&h.extend(1)).sub(&Poly::one(n)));
    variety.certified_radical = b.certified_radical;
    variety.certified_prime = b.certified_prime;
    Ok(LocalizedVariety { base: b.clone(), h: h.clone(), witness: n - 1, variety })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localize_line() {
        let line = AffineVariety::affine_space("b", 1);
        let x = Poly::var(1, 0);
        let loc = localize(&line, &x).unwrap();
        assert_eq!(loc.variety.names(), vec!["b.1", "w"]);
        let expect = Poly::var(2, 1).mul(&Poly::var(2, 0)).sub(&Poly::one(2));
        assert_eq!(loc.variety.gens, vec![expect]);
        let on_origin = AffineVariety::new(line.ring.clone(), vec![x.clone()]);
        assert_eq!(localize(&on_origin, &x), Err(GeometryError::EmptyLocalization));
    }
}
