//! Semi-decision of `α'(A' × P') ⊆ closure of α(A × P)` by a search for
//! bounded Laurent curves.
//!
//! For every irreducible component `A'_j` and every component `A_i` a
//! sub-search runs over `d1 = 0, 1, 2, …`: it fixes the exponent window
//! `[−d1, d2]`, writes the curve coefficients as unknowns and decides
//! solvability of the resulting system over an algebraic closure of the
//! function field of `A'_j` by a Gröbner basis. The search is a resumable
//! state machine advanced in abstract steps.

pub mod ansatz;
pub mod bounds;
pub mod witness;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{decompose_restricted, AlgebraError, Component, Field, GroebnerBasis, GroebnerEngine, MonomialOrder, Omega, OmegaContext, Poly, Q};
use crate::geometry::{evaluate_morphism, AffineVariety, GeometryError, Morphism};
use crate::schur::{map_space, SchurError};

pub use ansatz::AnsatzLayout;
pub use bounds::{compute_bounds, BoundParams, GreenbergConstants, Provenance};
pub use witness::{extract_point, validate_witness, WitnessCheck, WitnessCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("nonzero source ideal needs Greenberg constants N0,c,s")]
    MissingGreenberg,
    #[error("morphisms do not share a codomain: {0}")]
    Codomain(String),
    #[error("inconsistent data: {0}")]
    Shape(String),
}

impl From<AlgebraError> for CertifyError {
    fn from(e: AlgebraError) -> Self {
        CertifyError::Geometry(e.into())
    }
}

impl From<SchurError> for CertifyError {
    fn from(e: SchurError) -> Self {
        CertifyError::Geometry(e.into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Give up on a sub-search once its window would exceed this `d1`.
    pub max_d1: Option<u32>,
    pub greenberg: Option<GreenbergConstants>,
}

/// The function field of an irreducible component and its generic point.
#[derive(Clone, Debug)]
pub struct GenericPointContext {
    pub ideal: Vec<Poly<Q>>,
    /// `None` when the component lives in no variables.
    pub field: Option<Arc<OmegaContext>>,
}

impl GenericPointContext {
    pub fn new(variety: &AffineVariety, component: &Component) -> Result<GenericPointContext, CertifyError> {
        let field = if variety.nvars() == 0 {
            None
        } else {
            Some(OmegaContext::new(variety.names(), &component.gens, true)?)
        };
        Ok(GenericPointContext { ideal: component.gens.clone(), field })
    }

    /// `(y_1 + J, …, y_m + J)`.
    pub fn point(&self) -> Vec<Omega> {
        match &self.field {
            Some(ctx) => (0..ctx.nvars()).map(|i| ctx.generator(i)).collect(),
            None => Vec::new(),
        }
    }

    pub fn evaluate(&self, f: &Poly<Q>) -> Omega {
        match &self.field {
            Some(ctx) => Omega::from_poly(ctx, f.clone()),
            None => Omega::from_q(&f.constant_coeff()),
        }
    }
}

/// Irreducible components, using the primality flag when present.
pub fn components(v: &AffineVariety) -> Result<Vec<Component>, CertifyError> {
    if v.gens.is_empty() {
        return Ok(vec![Component { gens: Vec::new(), certified_prime: true }]);
    }
    if v.certified_prime {
        let gb = v.groebner();
        return Ok(if gb.is_unit() { Vec::new() } else { vec![Component { gens: gb.polys(), certified_prime: true }] });
    }
    Ok(decompose_restricted(&v.gens, v.nvars(), false)?)
}

/// `b = α'⁰(a')` and `α'¹(a')` at the generic point of one component.
#[derive(Clone, Debug)]
struct TargetData<F> {
    b: Vec<F>,
    alpha1: Vec<F>,
}

#[derive(Debug)]
enum Phase<F> {
    Bounds,
    Build { bounds: BoundParams, layout: AnsatzLayout, batch: u8, eqs: Vec<Poly<F>> },
    Solve { bounds: BoundParams, layout: AnsatzLayout, eqs: Vec<Poly<F>>, case: usize, engine: GroebnerEngine<F> },
    Feasible { bounds: BoundParams, layout: AnsatzLayout, gb: GroebnerBasis<F> },
    Exhausted,
}

/// The system is invariant under `t ↦ λt`, which scales `c.i.e` by `λ^e`.
/// A solution either has every negative-exponent unknown zero, or a first
/// nonzero one (in variable order) that the scaling normalises to 1. Case
/// `k < m` pins the first nonzero to variable `k`; case `m` zeroes them all.
fn gauge_case<F: Field>(layout: &AnsatzLayout, eqs: &[Poly<F>], case: usize) -> Option<GroebnerEngine<F>> {
    let n = layout.nvars();
    let m = layout.d1 as usize * layout.rows();
    if case > m {
        return None;
    }
    let mut gens = eqs.to_vec();
    gens.extend((0..case.min(m)).map(|v| Poly::var(n, v)));
    if case < m {
        gens.push(Poly::var(n, case).sub(&Poly::one(n)));
    }
    Some(GroebnerEngine::new(gens, MonomialOrder::DegRevLex, n))
}

/// The `d1`-loop for one pair of components.
#[derive(Debug)]
struct SubSearch<F> {
    alpha: Arc<Morphism>,
    alpha_p: Arc<Morphism>,
    source_ideal: Vec<Poly<Q>>,
    target: TargetData<F>,
    degree: u32,
    config: CertifyConfig,
    d1: u32,
    phase: Phase<F>,
}

impl<F: Field> SubSearch<F> {
    fn new(alpha: &Arc<Morphism>, alpha_p: &Arc<Morphism>, ideal: &[Poly<Q>], target: TargetData<F>, degree: u32, config: CertifyConfig) -> Self {
        SubSearch {
            alpha: alpha.clone(),
            alpha_p: alpha_p.clone(),
            source_ideal: ideal.to_vec(),
            target,
            degree,
            config,
            d1: 0,
            phase: Phase::Bounds,
        }
    }

    fn is_terminal(&self) -> bool {
        matches!(self.phase, Phase::Feasible { .. } | Phase::Exhausted)
    }

    fn step(&mut self) -> Result<(), CertifyError> {
        let phase = std::mem::replace(&mut self.phase, Phase::Exhausted);
        self.phase = match phase {
            Phase::Bounds => {
                if self.config.max_d1.is_some_and(|m| self.d1 > m) {
                    Phase::Exhausted
                } else {
                    let bounds = compute_bounds(self.degree, &self.source_ideal, self.d1, self.config.greenberg)?;
                    let gamma_rows = map_space(&self.alpha_p.p, &self.alpha.p)?.len();
                    let layout = AnsatzLayout { base_rows: self.alpha.a.nvars(), gamma_rows, d1: bounds.d1, d2: bounds.d2 };
                    Phase::Build { bounds, layout, batch: 0, eqs: Vec::new() }
                }
            }
            Phase::Build { bounds, layout, batch, mut eqs } => {
                match batch {
                    0 => eqs.extend(ansatz::source_conditions(&layout, &self.source_ideal, bounds.n1).iter().map(|p| p.map_coeffs(F::from_q))),
                    1 => eqs.extend(ansatz::base_conditions(&layout, &self.alpha, &self.target.b)),
                    _ => eqs.extend(ansatz::fibre_conditions(&layout, &self.alpha, &self.alpha_p, &self.target.alpha1)?),
                }
                if batch < 2 {
                    Phase::Build { bounds, layout, batch: batch + 1, eqs }
                } else {
                    let engine = gauge_case(&layout, &eqs, 0).expect("at least one case");
                    self.settle(bounds, layout, eqs, 0, engine)
                }
            }
            Phase::Solve { bounds, layout, eqs, case, mut engine } => {
                engine.step();
                self.settle(bounds, layout, eqs, case, engine)
            }
            done => done,
        };
        Ok(())
    }

    fn settle(&mut self, bounds: BoundParams, layout: AnsatzLayout, eqs: Vec<Poly<F>>, case: usize, engine: GroebnerEngine<F>) -> Phase<F> {
        if !engine.is_done() {
            return Phase::Solve { bounds, layout, eqs, case, engine };
        }
        if engine.found_unit() {
            return match gauge_case(&layout, &eqs, case + 1) {
                Some(next) => Phase::Solve { bounds, layout, eqs, case: case + 1, engine: next },
                None => {
                    self.d1 += 1;
                    Phase::Bounds
                }
            };
        }
        Phase::Feasible { bounds, layout, gb: engine.finish() }
    }
}

#[derive(Debug)]
enum Search {
    Rational(SubSearch<Q>),
    Function(SubSearch<Omega>),
}

impl Search {
    fn step(&mut self) -> Result<(), CertifyError> {
        match self {
            Search::Rational(s) => s.step(),
            Search::Function(s) => s.step(),
        }
    }

    fn is_terminal(&self) -> bool {
        match self {
            Search::Rational(s) => s.is_terminal(),
            Search::Function(s) => s.is_terminal(),
        }
    }

    fn is_feasible(&self) -> bool {
        match self {
            Search::Rational(s) => matches!(s.phase, Phase::Feasible { .. }),
            Search::Function(s) => matches!(s.phase, Phase::Feasible { .. }),
        }
    }

    fn d1(&self) -> u32 {
        match self {
            Search::Rational(s) => s.d1,
            Search::Function(s) => s.d1,
        }
    }
}

/// The solved system for one covered component of `A'`.
#[derive(Clone, Debug)]
pub struct Coverage {
    /// Index of the morphism among the sources passed in.
    pub morphism: usize,
    pub target_component: usize,
    pub source_component: usize,
    pub bounds: BoundParams,
    pub layout: AnsatzLayout,
    pub source_ideal: Vec<Poly<Q>>,
    pub b: Vec<Omega>,
    pub alpha1: Vec<Omega>,
    system: SolvedSystem,
}

#[derive(Clone, Debug)]
enum SolvedSystem {
    Rational(GroebnerBasis<Q>),
    Function(GroebnerBasis<Omega>),
}

impl Coverage {
    pub fn system_size(&self) -> usize {
        match &self.system {
            SolvedSystem::Rational(g) => g.len(),
            SolvedSystem::Function(g) => g.len(),
        }
    }

    /// Try to pick a curve out of the solution set; `None` when none was
    /// found within `budget` Gröbner computations. Feasibility stands
    /// either way.
    pub fn extract_witness(&self, budget: usize) -> Option<WitnessCurve> {
        let l = &self.layout;
        // highest exponents first: they are the freest
        let mut order: Vec<usize> = (0..l.nvars()).collect();
        order.sort_by_key(|&v| (-l.exponent(v), l.row_of(v)));
        match &self.system {
            SolvedSystem::Rational(g) => extract_point(&g.polys(), l.nvars(), &order, budget).map(|p| WitnessCurve::from_point(l, self.bounds.n1, &p, Omega::from_q)),
            SolvedSystem::Function(g) => extract_point(&g.polys(), l.nvars(), &order, budget).map(|p| WitnessCurve::from_point(l, self.bounds.n1, &p, |x: &Omega| x.clone())),
        }
    }
}

/// A witness curve, if one was found within budget, and its re-validation.
pub type ExtractedWitness = (Option<WitnessCurve>, Option<WitnessCheck>);

#[derive(Clone, Debug)]
pub struct Certificate {
    pub coverages: Vec<Coverage>,
    pub steps: u64,
}

impl Certificate {
    /// Largest `d1` used.
    pub fn d1(&self) -> u32 {
        self.coverages.iter().map(|c| c.bounds.d1).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub enum CertifyStatus {
    Running,
    Certified(Certificate),
    /// Some component of `A'` has no feasible system up to `max_d1`.
    Exhausted { d1: u32 },
}

struct TargetSlot {
    morphism: usize,
    component: usize,
    searches: Vec<usize>,
    covered: Option<usize>,
}

/// Resumable `certify` over one `α` and one or more `α'` with the same
/// codomain; succeeds when every component of every source is covered.
pub struct CertifyState {
    alpha: Arc<Morphism>,
    sources: Vec<Arc<Morphism>>,
    searches: Vec<(usize, usize, Search)>,
    targets: Vec<TargetSlot>,
    cursor: usize,
    steps: u64,
    status: CertifyStatus,
}

impl std::fmt::Debug for CertifyState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CertifyState").field("steps", &self.steps).field("status", &self.status).finish()
    }
}

/// Largest total degree among the instance polynomials of `α` at the
/// dimension where the composition is compared.
fn instance_degree(alpha: &Morphism, sources: &[Arc<Morphism>]) -> Result<u32, CertifyError> {
    let mut deg = 1;
    for s in sources {
        let d = map_space(&s.p, &alpha.q)?.d();
        let inst = evaluate_morphism(alpha, d)?;
        deg = inst.components().iter().map(|f| f.total_degree().max(0) as u32).fold(deg, u32::max);
    }
    Ok(deg)
}

impl CertifyState {
    pub fn new(alpha: &Morphism, sources: &[Morphism], config: CertifyConfig) -> Result<CertifyState, CertifyError> {
        for s in sources {
            if s.q != alpha.q || s.b.nvars() != alpha.b.nvars() {
                return Err(CertifyError::Codomain(format!("{} over {} variables vs {} over {}", s.q, s.b.nvars(), alpha.q, alpha.b.nvars())));
            }
        }
        let alpha = Arc::new(alpha.clone());
        let sources: Vec<Arc<Morphism>> = sources.iter().cloned().map(Arc::new).collect();
        let degree = instance_degree(&alpha, &sources)?;
        let source_components = components(&alpha.a)?;
        let mut searches = Vec::new();
        let mut targets = Vec::new();
        for (m, s) in sources.iter().enumerate() {
            for (j, comp) in components(&s.a)?.iter().enumerate() {
                let ctx = GenericPointContext::new(&s.a, comp)?;
                let b: Vec<Omega> = s.alpha0.iter().map(|f| ctx.evaluate(f)).collect();
                let a1: Vec<Omega> = s.alpha1.iter().map(|f| ctx.evaluate(f)).collect();
                let mut slot = TargetSlot { morphism: m, component: j, searches: Vec::new(), covered: None };
                for (i, sc) in source_components.iter().enumerate() {
                    let search = if ctx.field.is_none() {
                        let q = |v: &[Omega]| v.iter().map(|x| x.to_q().expect("rational at a point")).collect();
                        let target = TargetData { b: q(&b), alpha1: q(&a1) };
                        Search::Rational(SubSearch::new(&alpha, s, &sc.gens, target, degree, config))
                    } else {
                        let target = TargetData { b: b.clone(), alpha1: a1.clone() };
                        Search::Function(SubSearch::new(&alpha, s, &sc.gens, target, degree, config))
                    };
                    slot.searches.push(searches.len());
                    searches.push((targets.len(), i, search));
                }
                targets.push(slot);
            }
        }
        let mut state = CertifyState { alpha, sources, searches, targets, cursor: 0, steps: 0, status: CertifyStatus::Running };
        state.refresh();
        Ok(state)
    }

    pub fn status(&self) -> &CertifyStatus {
        &self.status
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_done(&self) -> bool {
        !matches!(self.status, CertifyStatus::Running)
    }

    /// Current `d1` of the least advanced live sub-search.
    pub fn current_d1(&self) -> u32 {
        self.searches.iter().filter(|(t, _, s)| self.targets[*t].covered.is_none() && !s.is_terminal()).map(|(_, _, s)| s.d1()).min().unwrap_or(0)
    }

    fn live(&self, k: usize) -> bool {
        let (t, _, s) = &self.searches[k];
        self.targets[*t].covered.is_none() && !s.is_terminal()
    }

    /// Advance by `steps` abstract steps, one sub-search per step in
    /// round-robin order.
    pub fn advance(&mut self, steps: u64) -> Result<&CertifyStatus, CertifyError> {
        for _ in 0..steps {
            if self.is_done() {
                break;
            }
            let n = self.searches.len();
            let Some(k) = (0..n).map(|o| (self.cursor + o) % n).find(|&k| self.live(k)) else { break };
            self.searches[k].2.step()?;
            self.steps += 1;
            self.cursor = (k + 1) % n;
            if self.searches[k].2.is_feasible() {
                let t = self.searches[k].0;
                self.targets[t].covered = Some(k);
            }
            self.refresh();
        }
        Ok(&self.status)
    }

    /// Run until a verdict.
    pub fn run(&mut self) -> Result<&CertifyStatus, CertifyError> {
        while !self.is_done() {
            self.advance(1024)?;
        }
        Ok(&self.status)
    }

    fn refresh(&mut self) {
        if self.is_done() {
            return;
        }
        if let Some(t) = self.targets.iter().find(|t| t.covered.is_none() && t.searches.iter().all(|&k| self.searches[k].2.is_terminal())) {
            let d1 = t.searches.iter().map(|&k| self.searches[k].2.d1()).max().unwrap_or(0);
            self.status = CertifyStatus::Exhausted { d1: d1.saturating_sub(1) };
            return;
        }
        if self.targets.iter().all(|t| t.covered.is_some()) {
            let coverages = self.targets.iter().map(|t| self.coverage(t)).collect();
            self.status = CertifyStatus::Certified(Certificate { coverages, steps: self.steps });
        }
    }

    fn coverage(&self, t: &TargetSlot) -> Coverage {
        let k = t.covered.expect("covered");
        let (_, i, search) = &self.searches[k];
        let (bounds, layout, source_ideal, b, alpha1, system) = match search {
            Search::Rational(s) => match &s.phase {
                Phase::Feasible { bounds, layout, gb } => {
                    let lift = |v: &[Q]| v.iter().map(Omega::from_q).collect::<Vec<_>>();
                    (bounds, layout, &s.source_ideal, lift(&s.target.b), lift(&s.target.alpha1), SolvedSystem::Rational(gb.clone()))
                }
                _ => unreachable!("covered by a feasible search"),
            },
            Search::Function(s) => match &s.phase {
                Phase::Feasible { bounds, layout, gb } => (bounds, layout, &s.source_ideal, s.target.b.clone(), s.target.alpha1.clone(), SolvedSystem::Function(gb.clone())),
                _ => unreachable!("covered by a feasible search"),
            },
        };
        Coverage {
            morphism: t.morphism,
            target_component: t.component,
            source_component: *i,
            bounds: bounds.clone(),
            layout: *layout,
            source_ideal: source_ideal.clone(),
            b,
            alpha1,
            system,
        }
    }

    /// Extract and re-validate a witness for every coverage.
    pub fn witnesses(&self, cert: &Certificate, budget: usize) -> Result<Vec<ExtractedWitness>, CertifyError> {
        cert.coverages
            .iter()
            .map(|c| {
                let w = c.extract_witness(budget);
                let check = match &w {
                    Some(w) => Some(validate_witness(&self.alpha, &self.sources[c.morphism], &c.source_ideal, &c.b, &c.alpha1, w)?),
                    None => None,
                };
                Ok((w, check))
            })
            .collect()
    }
}

/// `certify(α, α')` to a verdict; without `max_d1` this need not return.
pub fn certify(alpha: &Morphism, alpha_p: &Morphism, config: CertifyConfig) -> Result<CertifyStatus, CertifyError> {
    let mut state = CertifyState::new(alpha, std::slice::from_ref(alpha_p), config)?;
    Ok(state.run()?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::basis;
    use crate::corpus::{symmetric_power_map, waring};

    fn cfg(max_d1: u32) -> CertifyConfig {
        CertifyConfig { max_d1: Some(max_d1), greenberg: None }
    }

    #[test]
    fn feasibility_by_nullstellensatz() {
        let c = Poly::<Q>::var(1, 0);
        let one = Poly::<Q>::one(1);
        assert!(!basis(&[c.mul(&c).sub(&one)], 1).is_unit());
        assert!(basis(&[c.clone(), c.sub(&one)], 1).is_unit());
    }

    #[test]
    fn cubic_example_certifies_at_d1_one() {
        let alpha = waring(2, 3).unwrap();
        let alpha_p = symmetric_power_map(2, 3, &[(vec![2, 1], Q::from(6))]).unwrap();
        let mut state = CertifyState::new(&alpha, &[alpha_p], cfg(2)).unwrap();
        let CertifyStatus::Certified(cert) = state.run().unwrap().clone() else { panic!("not certified") };
        assert_eq!(cert.d1(), 1);
        assert_eq!(cert.coverages[0].bounds.d2, 2);
        let ws = state.witnesses(&cert, 200).unwrap();
        let (Some(_), Some(check)) = &ws[0] else { panic!("no witness") };
        assert!(check.is_valid());
    }

    #[test]
    fn self_inclusion_at_d1_zero() {
        let alpha = waring(2, 3).unwrap();
        let CertifyStatus::Certified(cert) = certify(&alpha, &alpha, cfg(0)).unwrap() else { panic!() };
        assert_eq!(cert.d1(), 0);
    }
}
