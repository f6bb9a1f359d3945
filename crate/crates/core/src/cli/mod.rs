//! Command-line front end and its input language.

pub mod document;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::certify::{CertifyConfig, CertifyError, CertifyState, CertifyStatus, GreenbergConstants};
use crate::geometry::{image_closure_instance, instance_equations, smear, ClosedSubsetRepr, GeometryError, Morphism};
use crate::implicitise::{implicitise, sorted, DriverError, Outcome, ScheduleConfig, WITNESS_BUDGET};
use crate::parameterise::{parameterise, ParamError};

use document::{DocError, FunctorRef, SourceDocument};
use report::{certificate_lines, equation_lines, fingerprint_line, witness_json, Report};

#[derive(Parser, Debug)]
#[command(name = "polyfun", version, about = "Equations and parameterisations of closed subsets of polynomial functors")]
pub struct Cli {
    /// Document with the declarations.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Equations of a subset at `K^dim` (a morphism contributes its image
    /// closure at `K^from`).
    Smear {
        name: Option<String>,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        from: Option<usize>,
    },
    /// Instance equations of a subset, or the image closure of a morphism.
    Instances {
        name: Option<String>,
        #[arg(long)]
        dim: usize,
    },
    /// A parameterisation of a subset.
    Parameterise {
        name: Option<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Whether the images of the later morphisms lie in the closure of the
    /// image of the first.
    Certify {
        alpha: String,
        #[arg(required = true)]
        sources: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_d1: u32,
        #[arg(long)]
        greenberg: Option<String>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Equations for the image closure of a morphism.
    Implicitise {
        name: Option<String>,
        #[arg(long, default_value_t = 256)]
        steps_per_round: u64,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        max_d1: Option<u32>,
        #[arg(long)]
        greenberg: Option<String>,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Inconclusive = 2,
    InputError = 3,
    Unsupported = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) => ExitStatus::InputError,
            CliError::Unsupported(_) => ExitStatus::Unsupported,
            CliError::Internal(_) => ExitStatus::Failure,
        }
    }
}

fn algebra_limit(e: &GeometryError) -> bool {
    matches!(e, GeometryError::Algebra(AlgebraError::Unsupported(_) | AlgebraError::DecompositionIncomplete(_)))
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Unsupported { .. } => CliError::Unsupported(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        if algebra_limit(&e) {
            CliError::Unsupported(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::Geometry(g) => g.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Geometry(g) => g.into(),
            CertifyError::MissingGreenberg => CliError::Unsupported(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DriverError> for CliError {
    fn from(e: DriverError) -> Self {
        if e.is_unsupported() {
            return CliError::Unsupported(e.to_string());
        }
        match e {
            DriverError::Config(m) => CliError::Input(m),
            DriverError::Geometry(g) => g.into(),
            DriverError::Param(p) => p.into(),
            DriverError::Certify(c) => c.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// A finished run: the report and the exit status it implies.
#[derive(Debug)]
pub struct Response {
    pub report: Report,
    pub status: ExitStatus,
}

fn load(input: &Option<PathBuf>) -> Result<SourceDocument, CliError> {
    let path = input.as_ref().ok_or_else(|| CliError::Input("--input is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
    Ok(SourceDocument::parse(&text)?)
}

fn greenberg(s: &Option<String>) -> Result<Option<GreenbergConstants>, CliError> {
    s.as_deref()
        .map(|s| GreenbergConstants::parse(s).ok_or_else(|| CliError::Input(format!("--greenberg expects N0,c,s with N0, c >= 1, got `{}`", s))))
        .transpose()
}

/// The named entry, or the only one when no name is given.
fn pick<'a, T>(items: &'a std::collections::BTreeMap<String, T>, name: &Option<String>, kind: &str) -> Result<(&'a String, &'a T), CliError> {
    match name {
        Some(n) => items.get_key_value(n).ok_or_else(|| CliError::Input(format!("no {} named `{}`", kind, n))),
        None if items.len() == 1 => Ok(items.iter().next().expect("one entry")),
        None => Err(CliError::Input(format!("name a {} ({} declared)", kind, items.len()))),
    }
}

enum Target<'a> {
    Subset(&'a ClosedSubsetRepr),
    Morphism(&'a Morphism),
}

fn target<'a>(doc: &'a SourceDocument, name: &Option<String>) -> Result<(&'a String, Target<'a>), CliError> {
    let m = &doc.model;
    if let Some(n) = name {
        if let Some((k, x)) = m.subsets.get_key_value(n) {
            return Ok((k, Target::Subset(x)));
        }
        if let Some((k, a)) = m.morphisms.get_key_value(n) {
            return Ok((k, Target::Morphism(a)));
        }
        return Err(CliError::Input(format!("no subset or morphism named `{}`", n)));
    }
    match (m.subsets.len(), m.morphisms.len()) {
        (1, 0) => pick(&m.subsets, name, "subset").map(|(k, x)| (k, Target::Subset(x))),
        (0, 1) => pick(&m.morphisms, name, "morphism").map(|(k, a)| (k, Target::Morphism(a))),
        _ => Err(CliError::Input("name the subset or morphism to use".into())),
    }
}

/// Subset cut out by the image closure of `α` at `K^n`.
fn closure_subset(alpha: &Morphism, n: usize) -> Result<ClosedSubsetRepr, CliError> {
    let eqs = image_closure_instance(alpha, n)?;
    Ok(ClosedSubsetRepr::new(alpha.b.clone(), alpha.q.clone(), n, eqs.gens)?)
}

fn fingerprint_section(report: &mut Report, x: &ClosedSubsetRepr) -> Result<(), CliError> {
    let n = x.u_dim + 1;
    let gb = smear(x, n)?;
    report.section("fingerprint").push(fingerprint_line(&format!("smear at n = {}", n), &gb));
    Ok(())
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

pub fn execute(cli: &Cli, command_line: &str) -> Result<Response, CliError> {
    let doc = load(&cli.input)?;
    execute_on(&doc, &cli.command, command_line)
}

/// Run one subcommand against an already parsed document.
pub fn execute_on(doc: &SourceDocument, command: &Command, command_line: &str) -> Result<Response, CliError> {
    let started = Instant::now();
    let mut report = Report::new(command_line);
    let mut status = ExitStatus::Success;
    match command {
        Command::Smear { name, dim, from } => {
            let (label, x) = match target(doc, name)? {
                (k, Target::Subset(x)) => (k.clone(), x.clone()),
                (k, Target::Morphism(a)) => (k.clone(), closure_subset(a, from.unwrap_or(*dim))?),
            };
            let gb = smear(&x, *dim)?;
            let names = crate::geometry::instance_ring(&x.base.ring, &x.q, *dim, "y")?.0.names();
            report.section("result").push(format!("smear of {} from U = K^{} to K^{}", label, x.u_dim, dim));
            report.section("equations").extend(equation_lines(&gb, &names));
            fingerprint_section(&mut report, &x)?;
        }
        Command::Instances { name, dim } => {
            let (label, v) = match target(doc, name)? {
                (k, Target::Subset(x)) => (k.clone(), instance_equations(x, *dim)?),
                (k, Target::Morphism(a)) => (k.clone(), image_closure_instance(a, *dim)?),
            };
            report.section("result").push(format!("instance of {} at K^{}: {} variables, {} equations", label, dim, v.nvars(), v.gens.len()));
            report.section("equations").extend(equation_lines(&sorted(&v), &v.names()));
        }
        Command::Parameterise { name, trace } => {
            let (label, x) = pick(&doc.model.subsets, name, "subset")?;
            let result = parameterise(x)?;
            let base = doc
                .decls
                .iter()
                .find_map(|d| match d {
                    document::Decl::Subset(s) if &s.name == label => Some(s.base.clone()),
                    _ => None,
                })
                .expect("subset declared");
            let mut out = SourceDocument::default();
            out.decls.push(document::Decl::Field(Default::default()));
            if base != document::POINT {
                out.push_variety(&base, &x.base);
            }
            for (i, m) in result.components.iter().enumerate() {
                let a_name = format!("A{}", i + 1);
                let src = if m.a.nvars() == 0 && m.a.gens.is_empty() {
                    document::POINT.to_string()
                } else {
                    out.push_variety(&a_name, &m.a);
                    a_name
                };
                let p = FunctorRef { name: None, value: m.p.clone() };
                let q = FunctorRef { name: None, value: m.q.clone() };
                out.push_morphism(&format!("beta{}", i + 1), &src, p, &base, q, m)?;
            }
            report.section("result").push(format!("{} components for {}", result.components.len(), label));
            report.section("document").extend(out.to_string().lines().map(String::from));
            if *trace {
                report.section("trace").extend(result.trace.log().iter().cloned());
            }
            fingerprint_section(&mut report, x)?;
        }
        Command::Certify { alpha, sources, max_d1, greenberg: g, witness } => {
            let (_, a) = pick(&doc.model.morphisms, &Some(alpha.clone()), "morphism")?;
            let srcs: Vec<Morphism> = sources
                .iter()
                .map(|s| pick(&doc.model.morphisms, &Some(s.clone()), "morphism").map(|(_, m)| m.clone()))
                .collect::<Result<_, _>>()?;
            let config = CertifyConfig { max_d1: Some(*max_d1), greenberg: greenberg(g)? };
            let mut state = CertifyState::new(a, &srcs, config)?;
            match state.run()?.clone() {
                CertifyStatus::Certified(cert) => {
                    let ws = state.witnesses(&cert, WITNESS_BUDGET)?;
                    if ws.iter().any(|(_, c)| c.as_ref().is_some_and(|c| !c.is_valid())) {
                        return Err(CliError::Internal("witness failed re-validation".into()));
                    }
                    report.section("result").push("true".into());
                    report.section("certificate").extend(certificate_lines(&cert, &ws));
                    if let Some(path) = witness {
                        write_file(path, &witness_json(&cert, &ws))?;
                        report.section("witness").push(format!("written to {}", path.display()));
                    }
                }
                CertifyStatus::Exhausted { d1 } => {
                    status = ExitStatus::Inconclusive;
                    report.status = "inconclusive".into();
                    report.section("result").push(format!("no feasible system for d1 <= {}; inclusion neither shown nor refuted", d1));
                }
                CertifyStatus::Running => unreachable!("run returns a verdict"),
            }
            report.section("steps").push(state.steps().to_string());
        }
        Command::Implicitise { name, steps_per_round, max_n, max_d1, greenberg: g, witness, trace } => {
            let (label, a) = pick(&doc.model.morphisms, name, "morphism")?;
            let cfg = ScheduleConfig::new(*steps_per_round, *max_n, CertifyConfig { max_d1: *max_d1, greenberg: greenberg(g)? })?;
            let outcome = implicitise(a, &cfg)?;
            let rounds = match &outcome {
                Outcome::Found(f) => &f.rounds,
                Outcome::CapReached(p) => &p.rounds,
            };
            let log = rounds
                .iter()
                .map(|r| {
                    let tasks: Vec<String> = r.tasks.iter().map(|t| format!("n={} steps={} d1={} {:?}", t.n, t.steps, t.d1, t.status)).collect();
                    match &r.skipped {
                        Some(why) => format!("round {}: {} (task n={} not started: {})", r.round, tasks.join("; "), r.round, why),
                        None => format!("round {}: {}", r.round, tasks.join("; ")),
                    }
                })
                .collect::<Vec<_>>();
            match outcome {
                Outcome::Found(found) => {
                    report.section("result").push(format!("U_dim = {} for {}", found.u_dim, label));
                    report.section("equations").extend(equation_lines(&found.sorted_equations(), &found.equations.names()));
                    report.section("certificate").extend(certificate_lines(&found.certificate, &found.witnesses));
                    if let Some(path) = witness {
                        write_file(path, &witness_json(&found.certificate, &found.witnesses))?;
                        report.section("witness").push(format!("written to {}", path.display()));
                    }
                    report.section("rounds").extend(log);
                    let x = ClosedSubsetRepr::new(a.b.clone(), a.q.clone(), found.u_dim, found.equations.gens.clone())?;
                    fingerprint_section(&mut report, &x)?;
                }
                Outcome::CapReached(partial) => {
                    status = ExitStatus::Inconclusive;
                    report.status = "inconclusive".into();
                    report.section("result").push(format!("cap n = {} reached without a certificate; the equations below are not an answer", partial.max_n));
                    let eqs = report.section("partial equations");
                    for (n, v) in &partial.equations {
                        eqs.push(format!("n = {}:", n));
                        eqs.extend(equation_lines(&sorted(v), &v.names()).into_iter().map(|l| format!("  {}", l)));
                    }
                    if !partial.failures.is_empty() {
                        report.section("failed tasks").extend(partial.failures.iter().map(|(n, why)| format!("n = {}: {}", n, why)));
                    }
                    report.section("rounds").extend(log);
                }
            }
            if *trace {
                report.section("trace").push(format!("schedule: {:?}", cfg));
            }
        }
    }
    report.elapsed = started.elapsed();
    Ok(Response { report, status })
}

/// Parse arguments, run, print; returns the process exit code.
/// Run a subcommand given as arguments (without the program name) against
/// an already parsed document. `--input` is ignored.
pub fn run_document(doc: &SourceDocument, args: &[String]) -> Result<Response, CliError> {
    let argv = std::iter::once("polyfun".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Input(e.to_string().trim_end().to_string()))?;
    execute_on(doc, &cli.command, &args.join(" "))
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::InputError as i32 } else { ExitStatus::Success as i32 };
            let _ = e.print();
            return code;
        }
    };
    let command_line = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    match execute(&cli, &command_line) {
        Ok(r) => {
            print!("{}", r.report.render());
            r.status as i32
        }
        Err(e) => {
            eprintln!("polyfun: {}", e);
            e.status() as i32
        }
    }
}
