//! Polynomial functors as multisets of Schur functors.

use std::collections::BTreeMap;
use std::fmt;

use super::partition::Partition;
use super::SchurError;

/// `P = P_0 ⊕ ⊕ S_λ^{m_λ}`. Summands are kept in canonical order: size
/// descending, then parts descending; the degree-zero part is the empty
/// partition and therefore comes last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolynomialFunctor {
    summands: Vec<(Partition, u32)>,
}

/// Position of one copy of one summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyIndex {
    pub summand: usize,
    pub copy: usize,
}

fn canonical_cmp(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    b.size().cmp(&a.size()).then_with(|| b.parts().cmp(a.parts()))
}

impl PolynomialFunctor {
    pub fn zero() -> Self {
        PolynomialFunctor::default()
    }

    pub fn from_summands(items: impl IntoIterator<Item = (Partition, u32)>) -> Self {
        let mut m: BTreeMap<Partition, u32> = BTreeMap::new();
        for (p, k) in items {
            if k > 0 {
                *m.entry(p).or_default() += k;
            }
        }
        let mut summands: Vec<(Partition, u32)> = m.into_iter().collect();
        summands.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        PolynomialFunctor { summands }
    }

    pub fn schur(p: Partition) -> Self {
        PolynomialFunctor::from_summands([(p, 1)])
    }

    /// `S^d`, the d-th symmetric power.
    pub fn sym(d: u32) -> Self {
        PolynomialFunctor::schur(Partition::row(d))
    }

    pub fn constant(dim: u32) -> Self {
        PolynomialFunctor::from_summands([(Partition::empty(), dim)])
    }

    pub fn summands(&self) -> &[(Partition, u32)] {
        &self.summands
    }

    pub fn degree0_dim(&self) -> u32 {
        self.summands.iter().filter(|(p, _)| p.is_empty()).map(|(_, m)| *m).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.degree0_dim() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.summands.iter().map(|(p, _)| p.size()).max().unwrap_or(0)
    }

    pub fn dim(&self, n: usize) -> u64 {
        self.summands.iter().map(|(p, m)| *m as u64 * p.weyl_dimension(n)).sum()
    }

    /// Every copy in canonical order.
    pub fn copies(&self) -> Vec<CopyIndex> {
        let mut out = Vec::new();
        for (s, (_, m)) in self.summands.iter().enumerate() {
            for c in 0..*m as usize {
                out.push(CopyIndex { summand: s, copy: c });
            }
        }
        out
    }

    pub fn partition(&self, s: usize) -> &Partition {
        &self.summands[s].0
    }

    /// Multiplicities of the degree-`e` part.
    pub fn graded_part(&self, e: u32) -> BTreeMap<Partition, u32> {
        self.summands.iter().filter(|(p, _)| p.size() == e).map(|(p, m)| (p.clone(), *m)).collect()
    }

    pub fn pure_part(&self) -> PolynomialFunctor {
        PolynomialFunctor::from_summands(self.summands.iter().filter(|(p, _)| !p.is_empty()).cloned())
    }

    /// Direct sum, with the positions of each operand's copies in the sum.
    /// Copies of `self` precede copies of `other` within a shared summand.
    pub fn direct_sum(&self, other: &PolynomialFunctor) -> (PolynomialFunctor, Vec<CopyIndex>, Vec<CopyIndex>) {
        let sum = PolynomialFunctor::from_summands(self.summands.iter().chain(other.summands.iter()).cloned());
        let locate = |p: &Partition| sum.summands.iter().position(|(q, _)| q == p).expect("summand present");
        let left: Vec<CopyIndex> = self
            .copies()
            .into_iter()
            .map(|ci| CopyIndex { summand: locate(self.partition(ci.summand)), copy: ci.copy })
            .collect();
        let right: Vec<CopyIndex> = other
            .copies()
            .into_iter()
            .map(|ci| {
                let p = other.partition(ci.summand);
                let offset = self.summands.iter().find(|(q, _)| q == p).map(|(_, m)| *m as usize).unwrap_or(0);
                CopyIndex { summand: locate(p), copy: offset + ci.copy }
            })
            .collect();
        (sum, left, right)
    }

    /// Remove one copy. Returns the remaining functor and, for each of its
    /// copies in canonical order, the copy of `self` it came from.
    pub fn without_copy(&self, ci: CopyIndex) -> (PolynomialFunctor, Vec<CopyIndex>) {
        let rest = PolynomialFunctor::from_summands(
            self.summands.iter().enumerate().map(|(i, (p, k))| (p.clone(), if i == ci.summand { k - 1 } else { *k })),
        );
        let positions = rest
            .copies()
            .into_iter()
            .map(|c| {
                let p = rest.partition(c.summand);
                let s = self.summands.iter().position(|(q, _)| q == p).expect("summand present");
                let copy = if s == ci.summand && c.copy >= ci.copy { c.copy + 1 } else { c.copy };
                CopyIndex { summand: s, copy }
            })
            .collect();
        (rest, positions)
    }

    /// Split off one copy of the first top-degree summand: `Q = Q' ⊕ R`.
    /// `R` is the last copy of its summand.
    pub fn top_irreducible_summand(&self) -> Result<TopSplit, SchurError> {
        if !self.is_pure() {
            return Err(SchurError::NotPure(self.to_string()));
        }
        let (r, m) = self.summands.first().cloned().ok_or(SchurError::ZeroFunctor)?;
        let r_pos = CopyIndex { summand: 0, copy: m as usize - 1 };
        let (rest, rest_pos) = self.without_copy(r_pos);
        Ok(TopSplit { r, rest, r_pos, rest_pos })
    }

    pub fn parse(s: &str) -> Result<PolynomialFunctor, SchurError> {
        let t = s.trim();
        if t == "0" || t.is_empty() {
            return Ok(PolynomialFunctor::zero());
        }
        let mut items = Vec::new();
        for term in t.split('+') {
            let term = term.trim();
            let (mult, body) = match term.split_once('*') {
                Some((m, b)) => (
                    m.trim().parse::<u32>().map_err(|_| SchurError::Syntax(term.to_string()))?,
                    b.trim(),
                ),
                None => (1, term),
            };
            if let Some(rest) = body.strip_prefix('S') {
                items.push((Partition::parse(rest)?, mult));
            } else if let Ok(d) = body.parse::<u32>() {
                items.push((Partition::empty(), d * mult));
            } else {
                return Err(SchurError::Syntax(term.to_string()));
            }
        }
        Ok(PolynomialFunctor::from_summands(items))
    }
}

/// Result of [`PolynomialFunctor::top_irreducible_summand`].
#[derive(Clone, Debug, PartialEq)]
pub struct TopSplit {
    pub r: Partition,
    pub rest: PolynomialFunctor,
    pub r_pos: CopyIndex,
    pub rest_pos: Vec<CopyIndex>,
}

impl fmt::Display for PolynomialFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(p, m)| {
                let body = if p.is_empty() { "1".to_string() } else { format!("S{}", p) };
                if *m == 1 {
                    body
                } else if p.is_empty() {
                    m.to_string()
                } else {
                    format!("{}*{}", m, body)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Q < P`: not isomorphic, and at the largest degree where they differ the
/// part of `Q` is a quotient of the part of `P`.
pub fn functor_less(q: &PolynomialFunctor, p: &PolynomialFunctor) -> bool {
    if q == p {
        return false;
    }
    let top = q.degree().max(p.degree());
    for e in (0..=top).rev() {
        let qe = q.graded_part(e);
        let pe = p.graded_part(e);
        if qe != pe {
            return qe.iter().all(|(lam, m)| pe.get(lam).copied().unwrap_or(0) >= *m);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> PolynomialFunctor {
        PolynomialFunctor::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = f("S[2,1] + 2*S[3]");
        assert_eq!(p.to_string(), "2*S[3] + S[2,1]");
        assert_eq!(p.degree(), 3);
        assert_eq!(f("S[1] + S[1]"), f("2*S[1]"));
        assert_eq!(f("0"), PolynomialFunctor::zero());
    }

    #[test]
    fn top_summand_choice() {
        let s = f("S[3]").top_irreducible_summand().unwrap();
        assert_eq!(s.r, Partition::row(3));
        assert!(s.rest.is_zero());
        let s = f("S[2] + S[1]").top_irreducible_summand().unwrap();
        assert_eq!((s.r, s.rest), (Partition::row(2), f("S[1]")));
        let s = f("S[3] + S[2,1]").top_irreducible_summand().unwrap();
        assert_eq!((s.r, s.rest), (Partition::row(3), f("S[2,1]")));
        assert!(PolynomialFunctor::zero().top_irreducible_summand().is_err());
    }

    #[test]
    fn order_examples() {
        assert!(functor_less(&f("S[1]"), &f("S[2]")));
        assert!(!functor_less(&f("S[2]"), &f("S[2]")));
        assert!(!functor_less(&f("S[2] + S[1]"), &f("S[2]")));
        assert!(functor_less(&f("S[2]"), &f("S[2] + S[1]")));
    }

    #[test]
    fn direct_sum_positions() {
        let (s, l, r) = f("S[1]").direct_sum(&f("S[2] + S[1]"));
        assert_eq!(s, f("S[2] + 2*S[1]"));
        assert_eq!(l, vec![CopyIndex { summand: 1, copy: 0 }]);
        assert_eq!(r, vec![CopyIndex { summand: 0, copy: 0 }, CopyIndex { summand: 1, copy: 1 }]);
    }
}
