//! The implicitisation loop: for `n = 0, 1, 2, …` compute the image
//! closure at `K^n`, parameterise it, and start a `certify` task against
//! the original morphism. Tasks are dovetailed in rounds of a fixed number
//! of steps; the first task to certify wins.

use thiserror::Error;

use crate::algebra::{AlgebraError, Poly, Q};
use crate::certify::{Certificate, CertifyConfig, CertifyError, CertifyState, CertifyStatus, ExtractedWitness};
use crate::geometry::{image_closure_instance, AffineVariety, ClosedSubsetRepr, GeometryError, Morphism};
use crate::parameterise::{parameterise, ParamError, ParamResult};

/// Gröbner computations allowed when picking a witness out of a solved
/// system.
pub const WITNESS_BUDGET: usize = 64;

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("invalid schedule: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("witness for task {n} failed re-validation")]
    WitnessRejected { n: usize },
}

impl DriverError {
    /// Whether the failure is a limitation of the algebra back end rather
    /// than bad input.
    pub fn is_unsupported(&self) -> bool {
        fn algebra(e: &GeometryError) -> bool {
            matches!(e, GeometryError::Algebra(AlgebraError::Unsupported(_) | AlgebraError::DecompositionIncomplete(_)))
        }
        match self {
            DriverError::Geometry(e) | DriverError::Param(ParamError::Geometry(e)) | DriverError::Certify(CertifyError::Geometry(e)) => algebra(e),
            DriverError::Certify(CertifyError::MissingGreenberg) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleConfig {
    pub steps_per_round: u64,
    pub max_n: usize,
    pub certify: CertifyConfig,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig { steps_per_round: 256, max_n: 6, certify: CertifyConfig::default() }
    }
}

impl ScheduleConfig {
    pub fn new(steps_per_round: u64, max_n: usize, certify: CertifyConfig) -> Result<ScheduleConfig, DriverError> {
        if steps_per_round == 0 {
            return Err(DriverError::Config("steps per round must be at least 1".into()));
        }
        Ok(ScheduleConfig { steps_per_round, max_n, certify })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskStatus {
    Running,
    True,
    /// Infeasible for every `d1` up to the configured maximum.
    FailedInfeasibleBounded { d1: u32 },
    /// The algebra back end gave up on this task; see `failure`.
    FailedUnsupported,
}

pub struct TaskState {
    pub n: usize,
    /// Radical equations of the image closure at `K^n`.
    pub equations: AffineVariety,
    pub param: ParamResult,
    certify: CertifyState,
    pub status: TaskStatus,
    pub failure: Option<String>,
}

impl std::fmt::Debug for TaskState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TaskState").field("n", &self.n).field("status", &self.status).field("steps", &self.certify.steps()).finish()
    }
}

impl TaskState {
    pub fn new(alpha: &Morphism, n: usize, cfg: &ScheduleConfig) -> Result<TaskState, DriverError> {
        let equations = image_closure_instance(alpha, n)?;
        let subset = ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), n, equations.gens.clone())?;
        let param = parameterise(&subset)?;
        let certify = CertifyState::new(alpha, &param.components, cfg.certify)?;
        let mut task = TaskState { n, equations, param, certify, status: TaskStatus::Running, failure: None };
        task.sync();
        Ok(task)
    }

    pub fn is_live(&self) -> bool {
        self.status == TaskStatus::Running
    }

    pub fn steps(&self) -> u64 {
        self.certify.steps()
    }

    pub fn certify_state(&self) -> &CertifyState {
        &self.certify
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self.certify.status() {
            CertifyStatus::Certified(c) => Some(c),
            _ => None,
        }
    }

    /// Unsupported-algebra failures end this task only.
    fn advance(&mut self, steps: u64) -> Result<(), DriverError> {
        if !self.is_live() {
            return Ok(());
        }
        match self.certify.advance(steps) {
            Ok(_) => self.sync(),
            Err(e) => {
                let e = DriverError::from(e);
                if !e.is_unsupported() {
                    return Err(e);
                }
                self.status = TaskStatus::FailedUnsupported;
                self.failure = Some(e.to_string());
            }
        }
        Ok(())
    }

    fn sync(&mut self) {
        self.status = match self.certify.status() {
            CertifyStatus::Running => TaskStatus::Running,
            CertifyStatus::Certified(_) => TaskStatus::True,
            CertifyStatus::Exhausted { d1 } => TaskStatus::FailedInfeasibleBounded { d1: *d1 },
        };
    }
}

/// Advance every live task by exactly `steps_per_round` steps.
pub fn advance_round(states: &mut [TaskState], cfg: &ScheduleConfig) -> Result<(), DriverError> {
    for s in states.iter_mut() {
        s.advance(cfg.steps_per_round)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskProgress {
    pub n: usize,
    pub steps: u64,
    pub d1: u32,
    pub status: TaskStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundSummary {
    pub round: usize,
    /// Index of the task created in this round.
    pub created: Option<usize>,
    /// Why the task for this round could not be created.
    pub skipped: Option<String>,
    pub tasks: Vec<TaskProgress>,
}

fn summarise(round: usize, created: Option<usize>, skipped: Option<String>, tasks: &[TaskState]) -> RoundSummary {
    let tasks = tasks
        .iter()
        .map(|t| TaskProgress { n: t.n, steps: t.steps(), d1: t.certify.current_d1(), status: t.status })
        .collect();
    RoundSummary { round, created, skipped, tasks }
}

#[derive(Debug)]
pub struct Implicitisation {
    pub u_dim: usize,
    pub equations: AffineVariety,
    pub certificate: Certificate,
    pub witnesses: Vec<ExtractedWitness>,
    pub rounds: Vec<RoundSummary>,
}

impl Implicitisation {
    pub fn sorted_equations(&self) -> Vec<Poly<Q>> {
        sorted(&self.equations)
    }
}

/// Equations gathered before the cap was reached; not an answer.
#[derive(Debug)]
pub struct PartialReport {
    pub max_n: usize,
    pub equations: Vec<(usize, AffineVariety)>,
    /// Tasks the algebra back end gave up on, with the reason.
    pub failures: Vec<(usize, String)>,
    pub rounds: Vec<RoundSummary>,
}

#[derive(Debug)]
pub enum Outcome {
    Found(Implicitisation),
    CapReached(PartialReport),
}

/// By degree, then by printed form.
pub fn sorted(v: &AffineVariety) -> Vec<Poly<Q>> {
    let names = v.names();
    let mut out = v.gens.clone();
    out.sort_by_cached_key(|f| (f.total_degree(), f.display(&names)));
    out
}

/// Run rounds until a task certifies. Rounds continue past the task
/// `max_n` only while every live task is bounded in `d1`. A task the
/// algebra back end cannot handle is dropped; the others carry on.
pub fn implicitise(alpha: &Morphism, cfg: &ScheduleConfig) -> Result<Outcome, DriverError> {
    let mut tasks: Vec<TaskState> = Vec::new();
    let mut rounds = Vec::new();
    let mut failures = Vec::new();
    for round in 0.. {
        let (mut created, mut skipped) = (None, None);
        if round <= cfg.max_n {
            match TaskState::new(alpha, round, cfg) {
                Ok(t) => {
                    tasks.push(t);
                    created = Some(round);
                }
                Err(e) if e.is_unsupported() => {
                    failures.push((round, e.to_string()));
                    skipped = Some(e.to_string());
                }
                Err(e) => return Err(e),
            }
        } else if cfg.certify.max_d1.is_none() || !tasks.iter().any(TaskState::is_live) {
            break;
        }
        advance_round(&mut tasks, cfg)?;
        rounds.push(summarise(round, created, skipped, &tasks));
        if let Some(t) = tasks.iter().find(|t| t.status == TaskStatus::True) {
            let certificate = t.certificate().expect("true task carries a certificate").clone();
            let witnesses = t.certify.witnesses(&certificate, WITNESS_BUDGET)?;
            if witnesses.iter().any(|(_, c)| c.as_ref().is_some_and(|c| !c.is_valid())) {
                return Err(DriverError::WitnessRejected { n: t.n });
            }
            return Ok(Outcome::Found(Implicitisation {
                u_dim: t.n,
                equations: t.equations.clone(),
                certificate,
                witnesses,
                rounds,
            }));
        }
    }
    let equations = tasks.iter().map(|t| (t.n, t.equations.clone())).collect();
    failures.extend(tasks.iter().filter_map(|t| t.failure.clone().map(|f| (t.n, f))));
    failures.sort();
    Ok(Outcome::CapReached(PartialReport { max_n: cfg.max_n, equations, failures, rounds }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::symmetric_power_map;

    fn square() -> Morphism {
        symmetric_power_map(1, 2, &[(vec![2], Q::from(1))]).unwrap()
    }

    #[test]
    fn zero_steps_rejected() {
        assert!(ScheduleConfig::new(0, 3, CertifyConfig::default()).is_err());
    }

    #[test]
    fn squares_stop_at_two() {
        let cfg = ScheduleConfig::new(64, 4, CertifyConfig::default()).unwrap();
        let Outcome::Found(found) = implicitise(&square(), &cfg).unwrap() else { panic!("cap reached") };
        assert_eq!(found.u_dim, 2);
        assert_eq!(found.equations.gens.len(), 1);
        assert!(found.witnesses.iter().all(|(_, c)| c.as_ref().is_none_or(crate::certify::WitnessCheck::is_valid)));
    }

    #[test]
    fn empty_round_is_a_no_op() {
        let mut none: Vec<TaskState> = Vec::new();
        advance_round(&mut none, &ScheduleConfig::default()).unwrap();
        assert!(none.is_empty());
    }
}
