//! Partitions, semistandard tableaux and Littlewood–Richardson numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::SchurError;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition, SchurError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::InvalidPartition(format!("{:?}", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn row(n: u32) -> Partition {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p > j).count() as u32).collect())
    }

    /// Cells `(row, col)` in row reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                out.push((i, j));
            }
        }
        out
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Dimension of `S_λ(K^n)` by the hook-content formula.
    pub fn weyl_dimension(&self, n: usize) -> u64 {
        if self.rows() > n {
            return 0;
        }
        let conj = self.conjugate();
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for (i, j) in self.cells() {
            let hook = (self.0[i] as usize - j) + (conj.0[j] as usize - i) - 1;
            num *= BigInt::from(n + j) - BigInt::from(i);
            den *= BigInt::from(hook);
        }
        (num / den).to_u64().expect("dimension fits")
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn parse(s: &str) -> Result<Partition, SchurError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| SchurError::InvalidPartition(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = inner.split(',').map(|p| p.trim().parse::<u32>()).collect();
        Partition::new(parts.map_err(|_| SchurError::InvalidPartition(s.to_string()))?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", p.join(","))
    }
}

/// A filling of a partition shape, stored row by row with entries `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Tableau {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    /// Entries in row reading order.
    pub fn word(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Number of occurrences of each letter `1..=n`.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut c = vec![0u32; n];
        for &x in self.rows.iter().flatten() {
            c[x as usize - 1] += 1;
        }
        c
    }

    /// Sorted distinct letters.
    pub fn letters(&self) -> Vec<u8> {
        let mut l = self.word();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> Tableau {
        Tableau { rows: self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect() }
    }

    /// Rows joined by `_`, letters as digits (letters above 9 in brackets).
    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| if x < 10 { x.to_string() } else { format!("({})", x) }).collect())
            .collect();
        rows.join("_")
    }

    pub fn parse_label(s: &str) -> Option<Tableau> {
        let mut rows = Vec::new();
        for part in s.split('_') {
            let mut row = Vec::new();
            let mut chars = part.chars().peekable();
            while let Some(c) = chars.next() {
                if c == '(' {
                    let mut num = String::new();
                    for d in chars.by_ref() {
                        if d == ')' {
                            break;
                        }
                        num.push(d);
                    }
                    row.push(num.parse().ok()?);
                } else {
                    row.push(c.to_digit(10)? as u8);
                }
            }
            if row.is_empty() {
                return None;
            }
            rows.push(row);
        }
        Some(Tableau { rows })
    }

    pub fn is_semistandard(&self) -> bool {
        for r in &self.rows {
            if r.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
        }
        for i in 1..self.rows.len() {
            for (j, &x) in self.rows[i].iter().enumerate() {
                if self.rows[i - 1].get(j).is_none_or(|&above| above >= x) {
                    return false;
                }
            }
        }
        true
    }
}

/// Semistandard tableaux of shape `shape` with entries in `1..=n`, in
/// lexicographic order of their reading words.
pub fn ssyt(shape: &Partition, n: usize) -> Vec<Tableau> {
    let cells = shape.cells();
    let mut out = Vec::new();
    if shape.rows() > n {
        return out;
    }
    let mut fill: Vec<Vec<u8>> = shape.parts().iter().map(|&p| vec![0u8; p as usize]).collect();
    fn rec(k: usize, cells: &[(usize, usize)], n: usize, fill: &mut Vec<Vec<u8>>, out: &mut Vec<Tableau>) {
        if k == cells.len() {
            out.push(Tableau { rows: fill.clone() });
            return;
        }
        let (i, j) = cells[k];
        let mut lo = 1u8;
        if j > 0 {
            lo = lo.max(fill[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(fill[i - 1][j] + 1);
        }
        for v in lo..=(n as u8) {
            fill[i][j] = v;
            rec(k + 1, cells, n, fill, out);
        }
        fill[i][j] = 0;
    }
    rec(0, &cells, n, &mut fill, &mut out);
    out
}

/// Littlewood–Richardson coefficient `c^λ_{μν}` by counting LR tableaux of
/// skew shape `λ/μ` and content `ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !lambda.contains(mu) || lambda.size() != mu.size() + nu.size() {
        return 0;
    }
    let lp = lambda.parts();
    let mp: Vec<u32> = (0..lp.len()).map(|i| mu.parts().get(i).copied().unwrap_or(0)).collect();
    // skew cells in reverse reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for i in 0..lp.len() {
        for j in (mp[i] as usize..lp[i] as usize).rev() {
            cells.push((i, j));
        }
    }
    let nrows = nu.rows();
    let mut fill: Vec<Vec<u32>> = lp.iter().map(|&p| vec![0u32; p as usize]).collect();
    let mut counts = vec![0u32; nrows + 1];
    let mut total = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        mp: &[u32],
        nu: &[u32],
        fill: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        total: &mut u64,
    ) {
        if k == cells.len() {
            *total += 1;
            return;
        }
        let (i, j) = cells[k];
        for v in 1..=nu.len() as u32 {
            // content bound and lattice condition on the reverse reading word
            if counts[v as usize] >= nu[v as usize - 1] {
                continue;
            }
            if v > 1 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            // rows weakly increase left to right: right neighbour already placed
            if let Some(&r) = fill[i].get(j + 1) {
                if r != 0 && v > r {
                    continue;
                }
            }
            // columns strictly increase downwards
            if i > 0 && j >= mp[i - 1] as usize && fill[i - 1][j] >= v {
                continue;
            }
            fill[i][j] = v;
            counts[v as usize] += 1;
            rec(k + 1, cells, mp, nu, fill, counts, total);
            counts[v as usize] -= 1;
            fill[i][j] = 0;
        }
    }
    rec(0, &cells, &mp, nu.parts(), &mut fill, &mut counts, &mut total);
    total
}

/// All nonzero `c^λ_{μν}` as a map `(μ, ν) -> c`.
pub fn lr_decomposition(lambda: &Partition) -> BTreeMap<(Partition, Partition), u64> {
    let mut out = BTreeMap::new();
    let n = lambda.size();
    for k in 0..=n {
        for mu in Partition::all_of_size(k) {
            if !lambda.contains(&mu) {
                continue;
            }
            for nu in Partition::all_of_size(n - k) {
                let c = lr_coefficient(lambda, &mu, &nu);
                if c > 0 {
                    out.insert((mu.clone(), nu), c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn instance_dimensions() {
        assert_eq!(ssyt(&p(&[3]), 3).len(), 10);
        assert_eq!(ssyt(&p(&[1, 1]), 3).len(), 3);
        assert_eq!(ssyt(&p(&[2, 1]), 2).len(), 2);
        assert_eq!(p(&[2, 1]).weyl_dimension(2), 2);
        assert_eq!(p(&[1, 1, 1]).weyl_dimension(2), 0);
    }

    #[test]
    fn pieri_rule_small() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
    }

    #[test]
    fn labels_roundtrip() {
        let t = Tableau::from_rows(vec![vec![1, 1, 12], vec![2]]);
        assert_eq!(t.label(), "11(12)_2");
        assert_eq!(Tableau::parse_label(&t.label()), Some(t));
        assert_eq!(Partition::parse("[3,1]").unwrap(), p(&[3, 1]));
        assert_eq!(p(&[3, 1]).to_string(), "[3,1]");
    }
}
