//! Record of the recursion in [`super::parameterise`], with the checks that
//! make its termination argument observable.

use std::fmt;

use crate::algebra::ideal::basis;
use crate::algebra::{Poly, Q};
use crate::schur::{functor_less, PolynomialFunctor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Exit1,
    Exit2,
    DerivativeCall,
    ShiftCall,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::Exit1 => "exit1",
            Branch::Exit2 => "exit2",
            Branch::DerivativeCall => "derivative-call",
            Branch::ShiftCall => "shift-call",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub parent: Option<usize>,
    /// Edge from the parent.
    pub via: Option<Branch>,
    pub depth: usize,
    pub functor: PolynomialFunctor,
    pub taken: Vec<Branch>,
    /// Reduced basis of the projection `X'(U)` on `B × Q'(U)`.
    pub projection: Vec<Poly<Q>>,
    pub fingerprint: Option<u64>,
    /// Degree in the `R(U)` coordinates of the first surviving equation.
    pub x_degree: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct RecursionTrace {
    entries: Vec<TraceEntry>,
    log: Vec<String>,
}

/// FNV-1a over the printed basis; stable across runs and platforms.
pub fn fingerprint(gb: &[Poly<Q>]) -> u64 {
    let mut printed: Vec<String> = gb.iter().map(|p| format!("{:?}", p.terms())).collect();
    printed.sort();
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for s in printed {
        for b in s.bytes().chain(std::iter::once(b';')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl RecursionTrace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn log(&self) -> &[String] {
        &self.log
    }

    pub(crate) fn enter(&mut self, parent: Option<(usize, Branch)>, functor: &PolynomialFunctor) -> usize {
        let depth = parent.map(|(p, _)| self.entries[p].depth + 1).unwrap_or(0);
        self.entries.push(TraceEntry {
            parent: parent.map(|(p, _)| p),
            via: parent.map(|(_, b)| b),
            depth,
            functor: functor.clone(),
            taken: Vec::new(),
            projection: Vec::new(),
            fingerprint: None,
            x_degree: None,
        });
        let id = self.entries.len() - 1;
        self.note(id, 0, format!("enter Q = {}", functor));
        id
    }

    pub(crate) fn note(&mut self, node: usize, step: u32, detail: String) {
        let indent = "  ".repeat(self.entries[node].depth);
        self.log.push(format!("{}[{}] step {}: {}", indent, node, step, detail));
    }

    pub(crate) fn take(&mut self, node: usize, b: Branch) {
        self.entries[node].taken.push(b);
    }

    pub(crate) fn record_projection(&mut self, node: usize, gb: Vec<Poly<Q>>, x_degree: Option<u32>) {
        let fp = fingerprint(&gb);
        let e = &mut self.entries[node];
        e.projection = gb;
        e.fingerprint = Some(fp);
        e.x_degree = x_degree;
        let deg = x_degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        self.note(node, 3, format!("projection fingerprint {:016x}, x-degree {}", fp, deg));
    }

    /// Every edge either lowers the functor, or keeps it and shrinks
    /// `X'(U)`, or keeps both and lowers the degree of the first equation.
    pub fn check(&self) -> Result<(), String> {
        for (i, e) in self.entries.iter().enumerate() {
            let (Some(p), Some(via)) = (e.parent, e.via) else { continue };
            let parent = &self.entries[p];
            match via {
                Branch::Exit2 | Branch::ShiftCall => {
                    if !functor_less(&e.functor, &parent.functor) {
                        return Err(format!("{} edge {} -> {}: {} is not below {}", via, p, i, e.functor, parent.functor));
                    }
                }
                Branch::DerivativeCall => {
                    if e.functor != parent.functor {
                        return Err(format!("derivative edge {} -> {} changed the functor", p, i));
                    }
                    let nv = parent.projection.first().or(e.projection.first()).map(|g| g.nvars());
                    let Some(nv) = nv else {
                        if e.x_degree >= parent.x_degree {
                            return Err(format!("derivative edge {} -> {}: degree did not drop", p, i));
                        }
                        continue;
                    };
                    let child = basis(&e.projection, nv);
                    if !parent.projection.iter().all(|g| child.contains(g)) {
                        return Err(format!("derivative edge {} -> {}: projection grew", p, i));
                    }
                    let same = e.projection.iter().all(|g| basis(&parent.projection, nv).contains(g));
                    if same && e.x_degree >= parent.x_degree {
                        return Err(format!("derivative edge {} -> {}: degree did not drop", p, i));
                    }
                }
                Branch::Exit1 => return Err(format!("exit1 is not an edge ({} -> {})", p, i)),
            }
        }
        Ok(())
    }
}
