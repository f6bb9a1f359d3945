//! Exponent windows for the truncated curve search.

use crate::algebra::{Poly, Q};

use super::CertifyError;

/// Approximation constants `(N_0, c, s)`: a solution modulo `t^N` with
/// `N ≥ N_0` can be corrected to an exact one agreeing modulo
/// `t^{⌈N/c⌉ − s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreenbergConstants {
    pub n0: u64,
    pub c: u64,
    pub s: u64,
}

impl GreenbergConstants {
    pub const TRIVIAL: GreenbergConstants = GreenbergConstants { n0: 1, c: 1, s: 0 };

    /// Parse `N0,c,s`.
    pub fn parse(s: &str) -> Option<GreenbergConstants> {
        let parts: Vec<u64> = s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
        match parts[..] {
            [n0, c, s] if n0 >= 1 && c >= 1 => Some(GreenbergConstants { n0, c, s }),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    TrivialIdealZero,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub d1: u32,
    pub d2: u32,
    /// Equations of `A` must hold modulo `t^{n1}`.
    pub n1: u32,
    pub greenberg: GreenbergConstants,
    pub provenance: Provenance,
}

/// `alpha_degree` is the largest total degree among the instance
/// polynomials of `α`; `ideal` generates the prime ideal of the source
/// component.
pub fn compute_bounds(
    alpha_degree: u32,
    ideal: &[Poly<Q>],
    d1: u32,
    user: Option<GreenbergConstants>,
) -> Result<BoundParams, CertifyError> {
    let dd = alpha_degree.max(1) as i64;
    let limit_window = (dd - 1) * d1 as i64;
    let gens: Vec<&Poly<Q>> = ideal.iter().filter(|f| !f.is_zero()).collect();
    if gens.is_empty() {
        return Ok(BoundParams {
            d1,
            d2: limit_window as u32,
            n1: 0,
            greenberg: GreenbergConstants::TRIVIAL,
            provenance: Provenance::TrivialIdealZero,
        });
    }
    let g = user.ok_or(CertifyError::MissingGreenberg)?;
    let df = gens.iter().map(|f| f.total_degree()).max().unwrap_or(1).max(1);
    let e = d1 as i64 * df;
    let (n0, c, s) = (g.n0 as i64, g.c as i64, g.s as i64);
    // ⌈(N1 + e)/c⌉ − s − d1 must exceed the window that matters for the limits
    let n1 = (n0 - e).max(c * (limit_window + s + d1 as i64) + 1 - e).max(0);
    let d2 = limit_window.max(n1 + (df - 1) * d1 as i64 - 1).max(0);
    Ok(BoundParams { d1, d2: d2 as u32, n1: n1 as u32, greenberg: g, provenance: Provenance::UserSupplied })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_for_free_sources() {
        let b = compute_bounds(3, &[], 1, None).unwrap();
        assert_eq!((b.d2, b.n1, b.provenance), (2, 0, Provenance::TrivialIdealZero));
        assert_eq!(compute_bounds(1, &[], 5, None).unwrap().d2, 0);
        assert_eq!(compute_bounds(3, &[], 0, None).unwrap().d2, 0);
    }

    #[test]
    fn nonzero_ideal_needs_constants() {
        let x = Poly::<Q>::var(2, 0);
        let f = x.pow(2).sub(&Poly::var(2, 1));
        assert_eq!(compute_bounds(2, std::slice::from_ref(&f), 1, None), Err(CertifyError::MissingGreenberg));
        let b = compute_bounds(2, &[f], 1, Some(GreenbergConstants { n0: 4, c: 2, s: 1 })).unwrap();
        // e = 2, N1 = max(2, 2·(1 + 1 + 1) + 1 − 2) = 5, d2 = max(1, 5 + 1 − 1) = 5
        assert_eq!((b.n1, b.d2), (5, 5));
        assert_eq!(GreenbergConstants::parse("4, 2,1"), Some(GreenbergConstants { n0: 4, c: 2, s: 1 }));
        assert_eq!(GreenbergConstants::parse("0,1,1"), None);
    }
}
