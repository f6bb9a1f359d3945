//! Monomial orders.

use std::cmp::Ordering;
use std::sync::Arc;

/// A term order on exponent vectors of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Product of degree-reverse-lexicographic orders on blocks of
    /// variables; earlier blocks dominate. Every variable must occur in
    /// exactly one block. Singleton blocks give a lexicographic order with
    /// an arbitrary variable precedence.
    Blocks(Arc<Vec<Vec<usize>>>),
}

impl MonomialOrder {
    /// Elimination order: the variables flagged in `drop` form the first
    /// block, the rest the second.
    pub fn elimination(nvars: usize, drop: &[usize]) -> MonomialOrder {
        let mut first: Vec<usize> = drop.to_vec();
        first.sort_unstable();
        first.dedup();
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        let mut blocks = Vec::new();
        if !first.is_empty() {
            blocks.push(first);
        }
        if !rest.is_empty() {
            blocks.push(rest);
        }
        MonomialOrder::Blocks(Arc::new(blocks))
    }

    /// Lexicographic order with the given variable precedence (greatest
    /// first); unlisted variables follow in index order.
    pub fn lex_with(nvars: usize, precedence: &[usize]) -> MonomialOrder {
        let mut blocks: Vec<Vec<usize>> = precedence.iter().map(|&v| vec![v]).collect();
        for i in 0..nvars {
            if !precedence.contains(&i) {
                blocks.push(vec![i]);
            }
        }
        MonomialOrder::Blocks(Arc::new(blocks))
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => drl(a, b, None),
            MonomialOrder::Blocks(blocks) => {
                for blk in blocks.iter() {
                    let o = drl(a, b, Some(blk));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "drl".into(),
            MonomialOrder::Blocks(b) => {
                let parts: Vec<String> = b
                    .iter()
                    .map(|blk| blk.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                format!("blocks[{}]", parts.join("|"))
            }
        }
    }
}

fn drl(a: &[u32], b: &[u32], idx: Option<&Vec<usize>>) -> Ordering {
    match idx {
        None => {
            let da: u64 = a.iter().map(|&x| x as u64).sum();
            let db: u64 = b.iter().map(|&x| x as u64).sum();
            if da != db {
                return da.cmp(&db);
            }
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
        Some(ix) => {
            let da: u64 = ix.iter().map(|&i| a[i] as u64).sum();
            let db: u64 = ix.iter().map(|&i| b[i] as u64).sum();
            if da != db {
                return da.cmp(&db);
            }
            for &i in ix.iter().rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drl_basics() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > x
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[1, 0]), Ordering::Greater);
        // x y z^0 vs x^0 y^2: degree tie, revlex: last differing is z? both 0; y: 1 vs 2 -> first greater
        assert_eq!(o.cmp(&[1, 1, 0], &[0, 2, 0]), Ordering::Greater);
        // classic: x z^... drl with 3 vars: xz < y^2
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let o = MonomialOrder::elimination(3, &[0]);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[0, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn lex_with_precedence() {
        let o = MonomialOrder::lex_with(3, &[2, 0]);
        assert_eq!(o.cmp(&[5, 5, 0], &[0, 0, 1]), Ordering::Less);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 9, 0]), Ordering::Greater);
    }
}
