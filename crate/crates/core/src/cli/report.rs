//! Report text and witness files.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::algebra::{Field, Omega, Poly, Q};
use crate::certify::{Certificate, ExtractedWitness, WitnessCheck, WitnessCurve};
use crate::parameterise::fingerprint;

pub const NAMING_SCHEME: &str = "canonical-1 (a.i b.i | x.s.c.T y.s.c.T | w | c.i.e)";
pub const ORDER: &str = "degrevlex";

/// A report: header, named sections, then timings. Everything before the
/// timing section is a function of the input and flags alone.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub status: String,
    sections: Vec<(String, Vec<String>)>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), status: "ok".into(), ..Report::default() }
    }

    pub fn section(&mut self, title: &str) -> &mut Vec<String> {
        self.sections.push((title.to_string(), Vec::new()));
        &mut self.sections.last_mut().expect("just pushed").1
    }

    pub fn lines(&self, title: &str) -> Option<&[String]> {
        self.sections.iter().find(|(t, _)| t == title).map(|(_, l)| l.as_slice())
    }

    /// Everything except timings.
    pub fn body(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "polyfun report");
        let _ = writeln!(s, "order: {}", ORDER);
        let _ = writeln!(s, "naming: {}", NAMING_SCHEME);
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "status: {}", self.status);
        for (title, lines) in &self.sections {
            let _ = writeln!(s, "--- {}", title);
            for l in lines {
                let _ = writeln!(s, "{}", l);
            }
        }
        s
    }

    pub fn render(&self) -> String {
        format!("{}--- timing\nelapsed_ms: {}\n", self.body(), self.elapsed.as_millis())
    }
}

pub fn equation_lines(gens: &[Poly<Q>], names: &[String]) -> Vec<String> {
    if gens.is_empty() {
        return vec!["(none)".into()];
    }
    gens.iter().map(|g| g.display(names)).collect()
}

pub fn fingerprint_line(label: &str, gb: &[Poly<Q>]) -> String {
    format!("{}: {:016x} ({} generators)", label, fingerprint(gb), gb.len())
}

#[derive(Serialize)]
struct CurveJson {
    d1: u32,
    d2: u32,
    n1: u32,
    /// Per ambient coordinate of the source, `(exponent, coefficient)`.
    a: Vec<Vec<(i32, String)>>,
    /// Per basis element of the map space, `(exponent, coefficient)`.
    gamma: Vec<Vec<(i32, String)>>,
}

#[derive(Serialize)]
struct CoverageJson {
    morphism: usize,
    target_component: usize,
    source_component: usize,
    validated: Option<bool>,
    curve: Option<CurveJson>,
}

#[derive(Serialize)]
struct WitnessFile {
    steps: u64,
    coverages: Vec<CoverageJson>,
}

fn rows(rows: &[Vec<Omega>], w: &WitnessCurve) -> Vec<Vec<(i32, String)>> {
    rows.iter().map(|r| w.exponents().zip(r).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c.to_string())).collect()).collect()
}

pub fn witness_json(cert: &Certificate, witnesses: &[ExtractedWitness]) -> String {
    let coverages = cert
        .coverages
        .iter()
        .zip(witnesses)
        .map(|(c, (w, check))| CoverageJson {
            morphism: c.morphism,
            target_component: c.target_component,
            source_component: c.source_component,
            validated: check.as_ref().map(WitnessCheck::is_valid),
            curve: w.as_ref().map(|w| CurveJson { d1: w.d1, d2: w.d2, n1: w.n1, a: rows(&w.a, w), gamma: rows(&w.gamma, w) }),
        })
        .collect();
    serde_json::to_string_pretty(&WitnessFile { steps: cert.steps, coverages }).expect("plain data serialises")
}

/// One line per coverage for the report body.
pub fn certificate_lines(cert: &Certificate, witnesses: &[ExtractedWitness]) -> Vec<String> {
    let mut out = vec![format!("steps: {}", cert.steps), format!("d1: {}", cert.d1())];
    for (c, (w, check)) in cert.coverages.iter().zip(witnesses) {
        let b = &c.bounds;
        let verdict = match (w, check) {
            (Some(_), Some(ch)) if ch.is_valid() => "witness re-validated",
            (Some(_), Some(_)) => "witness FAILED re-validation",
            _ => "no witness extracted within budget",
        };
        out.push(format!(
            "source {} component {} <- component {}: d1 = {}, d2 = {}, N1 = {}, constants ({}, {}, {}) {:?}, system of {} generators; {}",
            c.morphism, c.target_component, c.source_component, b.d1, b.d2, b.n1, b.greenberg.n0, b.greenberg.c, b.greenberg.s, b.provenance, c.system_size(), verdict
        ));
        if let Some(w) = w {
            for (i, r) in rows(&w.gamma, w).iter().enumerate() {
                if !r.is_empty() {
                    let terms: Vec<String> = r.iter().map(|(e, c)| format!("({})*t^{}", c, e)).collect();
                    out.push(format!("  gamma[{}] = {}", i, terms.join(" + ")));
                }
            }
            for (i, r) in rows(&w.a, w).iter().enumerate() {
                if !r.is_empty() {
                    let terms: Vec<String> = r.iter().map(|(e, c)| format!("({})*t^{}", c, e)).collect();
                    out.push(format!("  a[{}] = {}", i, terms.join(" + ")));
                }
            }
        }
    }
    out
}
