//! The input language: functors, varieties, morphisms and closed subsets.
//!
//! ```text
//! field Q;
//! functor P = 2*S[1];
//! variety A = { a.1^2 - a.2 } over vars(a.1..a.2) prime;
//! morphism f : point x P -> point x S[3] at dim 2 { y.0.0.111 = x.0.0.1^3 + x.0.1.1^3; }
//! subset X = (point, S[2], U=2) { y.0.0.11*y.0.0.22 - y.0.0.12^2 }
//! ```
//!
//! Declarations must precede use. `point` names the one-point variety.
//! Morphisms are given at an explicit dimension `d`: the left-hand sides
//! are coordinates of `B` and `y.s.c.T` of `Q(K^d)`, the right-hand sides
//! polynomials in the coordinates of `A` and `x.s.c.T` of `P(K^d)`;
//! unassigned coordinates are zero.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::parse::parse_poly;
use crate::algebra::{AlgebraError, Poly, Ring, Variable, Q};
use crate::geometry::{instance_ring, morphism_from_instance, AffineVariety, ClosedSubsetRepr, GeometryError, Morphism};
use crate::schur::{FunctorInstance, PolynomialFunctor, SchurError};

/// Source position; not part of declaration equality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Loc {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Loc {
    fn eq(&self, _: &Loc) -> bool {
        true
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("{at}: {message}")]
    Syntax { at: LocKey, message: String },
    #[error("in `{decl}` at line {line}: {message}")]
    Semantic { decl: String, line: usize, message: String },
    #[error("in `{decl}` at line {line}: unsupported: {message}")]
    Unsupported { decl: String, line: usize, message: String },
}

/// A location that does take part in equality, for error values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocKey {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for LocKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

fn syntax(at: Loc, message: impl Into<String>) -> DocError {
    DocError::Syntax { at: LocKey { line: at.line, column: at.column }, message: message.into() }
}

/// A functor written by name or inline.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorRef {
    pub name: Option<String>,
    pub value: PolynomialFunctor,
}

impl fmt::Display for FunctorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{}", n),
            None => write!(f, "{}", self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctorDecl {
    pub name: String,
    pub value: PolynomialFunctor,
    pub at: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietyDecl {
    pub name: String,
    pub gens: Vec<Poly<Q>>,
    pub vars: Vec<String>,
    pub radical: bool,
    pub prime: bool,
    pub at: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub p: FunctorRef,
    pub target: String,
    pub q: FunctorRef,
    pub dim: usize,
    /// Target coordinate and its polynomial on `A × P(K^d)`.
    pub assignments: Vec<(String, Poly<Q>)>,
    pub at: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetDecl {
    pub name: String,
    pub base: String,
    pub q: FunctorRef,
    pub u_dim: usize,
    pub equations: Vec<Poly<Q>>,
    pub at: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Field(Loc),
    Functor(FunctorDecl),
    Variety(VarietyDecl),
    Morphism(MorphismDecl),
    Subset(SubsetDecl),
}

/// Assembled objects by name.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Model {
    pub functors: BTreeMap<String, PolynomialFunctor>,
    pub varieties: BTreeMap<String, AffineVariety>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub subsets: BTreeMap<String, ClosedSubsetRepr>,
}

pub const POINT: &str = "point";

impl Model {
    pub fn variety(&self, name: &str) -> Option<AffineVariety> {
        if name == POINT {
            return Some(AffineVariety::point());
        }
        self.varieties.get(name).cloned()
    }

    fn declared(&self, name: &str) -> bool {
        name == POINT
            || self.functors.contains_key(name)
            || self.varieties.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.subsets.contains_key(name)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SourceDocument {
    pub decls: Vec<Decl>,
    pub model: Model,
}

impl PartialEq for SourceDocument {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls
    }
}

impl SourceDocument {
    pub fn parse(text: &str) -> Result<SourceDocument, DocError> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0, line: 1, column: 1 };
        let mut doc = SourceDocument::default();
        loop {
            p.skip_trivia();
            if p.at_end() {
                return Ok(doc);
            }
            let at = p.loc();
            let kw = p.ident()?;
            let decl = match kw.as_str() {
                "field" => {
                    let f = p.ident()?;
                    p.expect(';')?;
                    if f != "Q" {
                        return Err(DocError::Unsupported { decl: format!("field {}", f), line: at.line, message: "only the rationals are supported".into() });
                    }
                    Decl::Field(at)
                }
                "functor" => Decl::Functor(p.functor_decl(at, &mut doc.model)?),
                "variety" => Decl::Variety(p.variety_decl(at, &mut doc.model)?),
                "morphism" => Decl::Morphism(p.morphism_decl(at, &mut doc.model)?),
                "subset" => Decl::Subset(p.subset_decl(at, &mut doc.model)?),
                other => return Err(syntax(at, format!("expected a declaration, found `{}`", other))),
            };
            doc.decls.push(decl);
        }
    }

    /// Append a variety declaration for an assembled variety.
    pub fn push_variety(&mut self, name: &str, v: &AffineVariety) {
        self.decls.push(Decl::Variety(VarietyDecl {
            name: name.into(),
            gens: v.gens.clone(),
            vars: v.names(),
            radical: v.certified_radical && !v.gens.is_empty(),
            prime: v.certified_prime && !v.gens.is_empty(),
            at: Loc::default(),
        }));
        self.model.varieties.insert(name.into(), v.clone());
    }

    /// Append a morphism declaration built from an assembled morphism,
    /// written out at its basis dimension.
    pub fn push_morphism(&mut self, name: &str, source: &str, p: FunctorRef, target: &str, q: FunctorRef, m: &Morphism) -> Result<(), GeometryError> {
        let inst = m.at_basis_dimension()?;
        let (tgt_ring, _) = instance_ring(&m.b.ring, &m.q, inst.n, "y")?;
        let assignments = tgt_ring.names().into_iter().zip(inst.components()).filter(|(_, f)| !f.is_zero()).collect();
        self.decls.push(Decl::Morphism(MorphismDecl {
            name: name.into(),
            source: source.into(),
            p,
            target: target.into(),
            q,
            dim: inst.n,
            assignments,
            at: Loc::default(),
        }));
        self.model.morphisms.insert(name.into(), m.clone());
        Ok(())
    }
}

fn instance_names(base: &Ring, f: &PolynomialFunctor, n: usize, prefix: &str) -> Result<Vec<String>, SchurError> {
    let inst = FunctorInstance::new(f, n)?;
    Ok(base.names().into_iter().chain(inst.names(prefix)).collect())
}

fn print_vars(vars: &[String]) -> String {
    if let Some((prefix, _)) = vars.first().and_then(|v| v.rsplit_once('.')) {
        let ranged = vars.iter().enumerate().all(|(i, v)| *v == format!("{}.{}", prefix, i + 1));
        if ranged && vars.len() > 1 {
            return format!("{}.1..{}.{}", prefix, prefix, vars.len());
        }
    }
    vars.join(", ")
}

impl fmt::Display for SourceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for d in &self.decls {
            match d {
                Decl::Field(_) => writeln!(f, "field Q;")?,
                Decl::Functor(d) => writeln!(f, "functor {} = {};", d.name, d.value)?,
                Decl::Variety(d) => {
                    let gens: Vec<String> = d.gens.iter().map(|g| g.display(&d.vars)).collect();
                    write!(f, "variety {} = {{{}}} over vars({})", d.name, gens.join(", "), print_vars(&d.vars))?;
                    if d.radical {
                        write!(f, " radical")?;
                    }
                    if d.prime {
                        write!(f, " prime")?;
                    }
                    writeln!(f, ";")?;
                    names.insert(d.name.clone(), d.vars.clone());
                }
                Decl::Morphism(d) => {
                    writeln!(f, "morphism {} : {} x {} -> {} x {} at dim {} {{", d.name, d.source, d.p, d.target, d.q, d.dim)?;
                    let base = names.get(&d.source).map(|v| Ring::new(v.iter().map(|n| Variable::base(n.clone())).collect())).unwrap_or_default();
                    let src = instance_names(&base, &d.p.value, d.dim, "x").map_err(|_| fmt::Error)?;
                    for (lhs, rhs) in &d.assignments {
                        writeln!(f, "  {} = {};", lhs, rhs.display(&src))?;
                    }
                    writeln!(f, "}}")?;
                }
                Decl::Subset(d) => {
                    let base = names.get(&d.base).map(|v| Ring::new(v.iter().map(|n| Variable::base(n.clone())).collect())).unwrap_or_default();
                    let ring = instance_names(&base, &d.q.value, d.u_dim, "y").map_err(|_| fmt::Error)?;
                    let eqs: Vec<String> = d.equations.iter().map(|g| g.display(&ring)).collect();
                    let body = if eqs.is_empty() { " ".to_string() } else { format!(" {} ", eqs.join(", ")) };
                    writeln!(f, "subset {} = ({}, {}, U={}) {{{}}}", d.name, d.base, d.q, d.u_dim, body)?;
                }
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn loc(&self) -> Loc {
        Loc { line: self.line, column: self.column }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<(), DocError> {
        self.skip_trivia();
        let at = self.loc();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(syntax(at, format!("expected `{}`, found `{}`", want, c))),
            None => Err(syntax(at, format!("expected `{}`, found end of input", want))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, want: &str) -> bool {
        self.skip_trivia();
        let w: Vec<char> = want.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            for _ in 0..w.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, DocError> {
        self.skip_trivia();
        let at = self.loc();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            // `..` ends an identifier inside `vars(a.1..a.3)`
            if !is_ident_char(c) || (c == '.' && self.chars.get(self.pos + 1) == Some(&'.')) {
                break;
            }
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(syntax(at, "expected a name"));
        }
        Ok(s)
    }

    fn keyword(&mut self, want: &str) -> Result<(), DocError> {
        let at = self.loc();
        let got = self.ident()?;
        if got != want {
            return Err(syntax(at, format!("expected `{}`, found `{}`", want, got)));
        }
        Ok(())
    }

    fn number(&mut self) -> Result<usize, DocError> {
        let at = self.loc();
        let s = self.ident()?;
        s.parse().map_err(|_| syntax(at, format!("expected a number, found `{}`", s)))
    }

    /// Raw text up to a top-level character in `stops`.
    fn raw_until(&mut self, stops: &[char]) -> Result<(String, Loc), DocError> {
        self.skip_trivia();
        let at = self.loc();
        let mut depth = 0i32;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if depth == 0 && stops.contains(&c) {
                return Ok((s.trim_end().to_string(), at));
            }
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            s.push(c);
            self.bump();
        }
        Err(syntax(self.loc(), "unexpected end of input"))
    }

    fn poly(&mut self, stops: &[char], names: &[String]) -> Result<Poly<Q>, DocError> {
        let (text, at) = self.raw_until(stops)?;
        parse_poly(&text, names.len(), &|s: &str| names.iter().position(|n| n == s)).map_err(|e| match e {
            AlgebraError::Parse { column, message } => syntax(offset(at, &text, column), message),
            other => syntax(at, other.to_string()),
        })
    }

    fn functor_ref(&mut self, model: &Model, stops: &[char]) -> Result<FunctorRef, DocError> {
        let (text, at) = self.raw_until(stops)?;
        if let Some(v) = model.functors.get(&text) {
            return Ok(FunctorRef { name: Some(text), value: v.clone() });
        }
        PolynomialFunctor::parse(&text)
            .map(|value| FunctorRef { name: None, value })
            .map_err(|e| syntax(at, format!("`{}` is neither a declared functor nor a functor expression: {}", text, e)))
    }

    /// A functor reference ending at the keyword `at`.
    fn functor_ref_before_at(&mut self, model: &Model) -> Result<FunctorRef, DocError> {
        self.skip_trivia();
        let start = self.pos;
        let mut end = start;
        while end + 2 < self.chars.len() && !(self.chars[end].is_whitespace() && self.chars[end + 1..].starts_with(&['a', 't']) && self.chars[end + 3].is_whitespace()) {
            end += 1;
        }
        let at = self.loc();
        let text: String = self.chars[start..end].iter().collect::<String>().trim().to_string();
        while self.pos < end {
            self.bump();
        }
        if let Some(v) = model.functors.get(&text) {
            return Ok(FunctorRef { name: Some(text), value: v.clone() });
        }
        PolynomialFunctor::parse(&text)
            .map(|value| FunctorRef { name: None, value })
            .map_err(|e| syntax(at, format!("`{}` is neither a declared functor nor a functor expression: {}", text, e)))
    }

    fn fresh(&self, model: &Model, name: &str, at: Loc) -> Result<(), DocError> {
        if model.declared(name) {
            return Err(DocError::Semantic { decl: name.into(), line: at.line, message: "name already declared".into() });
        }
        Ok(())
    }

    fn functor_decl(&mut self, at: Loc, model: &mut Model) -> Result<FunctorDecl, DocError> {
        let name = self.ident()?;
        self.fresh(model, &name, at)?;
        self.expect('=')?;
        let (text, fat) = self.raw_until(&[';'])?;
        self.expect(';')?;
        let value = PolynomialFunctor::parse(&text).map_err(|e| syntax(fat, e.to_string()))?;
        model.functors.insert(name.clone(), value.clone());
        Ok(FunctorDecl { name, value, at })
    }

    fn var_list(&mut self) -> Result<Vec<String>, DocError> {
        self.keyword("vars")?;
        self.expect('(')?;
        let mut vars = Vec::new();
        if self.eat(')') {
            return Ok(vars);
        }
        loop {
            let at = self.loc();
            let first = self.ident()?;
            if self.eat_str("..") {
                let last = self.ident()?;
                let split = |s: &str| s.rsplit_once('.').and_then(|(p, i)| i.parse::<usize>().ok().map(|i| (p.to_string(), i)));
                match (split(&first), split(&last)) {
                    (Some((p, i)), Some((q, j))) if p == q && i <= j => vars.extend((i..=j).map(|k| format!("{}.{}", p, k))),
                    _ => return Err(syntax(at, format!("bad range {}..{}", first, last))),
                }
            } else {
                vars.push(first);
            }
            if self.eat(')') {
                return Ok(vars);
            }
            self.expect(',')?;
        }
    }

    fn variety_decl(&mut self, at: Loc, model: &mut Model) -> Result<VarietyDecl, DocError> {
        let name = self.ident()?;
        self.fresh(model, &name, at)?;
        self.expect('=')?;
        self.expect('{')?;
        // generators are parsed once the variables are known
        let mut raw = Vec::new();
        if !self.eat('}') {
            loop {
                raw.push(self.raw_until(&[',', '}'])?);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.keyword("over")?;
        let vars = self.var_list()?;
        let (mut radical, mut prime) = (false, false);
        loop {
            if self.eat(';') {
                break;
            }
            let fat = self.loc();
            match self.ident()?.as_str() {
                "radical" => radical = true,
                "prime" => prime = true,
                other => return Err(syntax(fat, format!("expected `radical`, `prime` or `;`, found `{}`", other))),
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(DocError::Semantic { decl: name, line: at.line, message: format!("variable {} repeated", v) });
            }
        }
        let mut gens = Vec::new();
        for (text, gat) in raw {
            let g = parse_poly(&text, vars.len(), &|s: &str| vars.iter().position(|n| n == s)).map_err(|e| match e {
                AlgebraError::Parse { column, message } => syntax(offset(gat, &text, column), message),
                other => syntax(gat, other.to_string()),
            })?;
            gens.push(g);
        }
        let ring = Ring::new(vars.iter().map(|v| Variable::base(v.clone())).collect());
        let mut v = AffineVariety::new(ring, gens.clone());
        // flags are assertions; an empty generator list is already both
        if radical {
            v = v.with_radical(true);
        }
        if prime {
            v = v.with_prime(true);
        }
        model.varieties.insert(name.clone(), v);
        Ok(VarietyDecl { name, gens, vars, radical, prime, at })
    }

    fn variety_ref(&mut self, model: &Model) -> Result<(String, AffineVariety), DocError> {
        let at = self.loc();
        let name = self.ident()?;
        let v = model.variety(&name).ok_or_else(|| syntax(at, format!("undeclared variety `{}`", name)))?;
        Ok((name, v))
    }

    fn morphism_decl(&mut self, at: Loc, model: &mut Model) -> Result<MorphismDecl, DocError> {
        let name = self.ident()?;
        self.fresh(model, &name, at)?;
        self.expect(':')?;
        let (source, a) = self.variety_ref(model)?;
        self.keyword("x")?;
        let p = self.functor_ref(model, &['-'])?;
        if !self.eat_str("->") {
            return Err(syntax(self.loc(), "expected `->`"));
        }
        let (target, b) = self.variety_ref(model)?;
        self.keyword("x")?;
        let q = self.functor_ref_before_at(model)?;
        self.keyword("at")?;
        self.keyword("dim")?;
        let dim = self.number()?;
        let semantic = |message: String| DocError::Semantic { decl: name.clone(), line: at.line, message };
        let src = instance_names(&a.ring, &p.value, dim, "x").map_err(|e| semantic(e.to_string()))?;
        let (tgt_ring, _) = instance_ring(&b.ring, &q.value, dim, "y").map_err(|e| semantic(e.to_string()))?;
        let tgt = tgt_ring.names();
        self.expect('{')?;
        let mut assignments: Vec<(String, Poly<Q>)> = Vec::new();
        let mut map = vec![Poly::zero(src.len()); tgt.len()];
        while !self.eat('}') {
            let lat = self.loc();
            let lhs = self.ident()?;
            let k = tgt.iter().position(|n| *n == lhs).ok_or_else(|| syntax(lat, format!("`{}` is not a target coordinate", lhs)))?;
            if assignments.iter().any(|(l, _)| *l == lhs) {
                return Err(syntax(lat, format!("`{}` assigned twice", lhs)));
            }
            self.expect('=')?;
            let rhs = self.poly(&[';'], &src)?;
            self.expect(';')?;
            map[k] = rhs.clone();
            assignments.push((lhs, rhs));
        }
        let m = morphism_from_instance(&a, &p.value, &b, &q.value, dim, &map).map_err(|e| semantic(e.to_string()))?;
        model.morphisms.insert(name.clone(), m);
        Ok(MorphismDecl { name, source, p, target, q, dim, assignments, at })
    }

    fn subset_decl(&mut self, at: Loc, model: &mut Model) -> Result<SubsetDecl, DocError> {
        let name = self.ident()?;
        self.fresh(model, &name, at)?;
        self.expect('=')?;
        self.expect('(')?;
        let (base, b) = self.variety_ref(model)?;
        self.expect(',')?;
        let q = self.functor_ref(model, &[','])?;
        self.expect(',')?;
        self.keyword("U")?;
        self.expect('=')?;
        let u_dim = self.number()?;
        self.expect(')')?;
        let semantic = |message: String| DocError::Semantic { decl: name.clone(), line: at.line, message };
        let ring = instance_names(&b.ring, &q.value, u_dim, "y").map_err(|e| semantic(e.to_string()))?;
        self.expect('{')?;
        let mut equations = Vec::new();
        if !self.eat('}') {
            loop {
                equations.push(self.poly(&[',', '}'], &ring)?);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let x = ClosedSubsetRepr::new(b, q.value.clone(), u_dim, equations.clone()).map_err(|e| semantic(e.to_string()))?;
        model.subsets.insert(name.clone(), x);
        Ok(SubsetDecl { name, base, q, u_dim, equations, at })
    }
}

/// Position of the 1-based `column` of `text`, which starts at `at`.
fn offset(at: Loc, text: &str, column: usize) -> Loc {
    let mut loc = at;
    for c in text.chars().take(column.saturating_sub(1)) {
        if c == '\n' {
            loc.line += 1;
            loc.column = 1;
        } else {
            loc.column += 1;
        }
    }
    loc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn waring_document() -> SourceDocument {
        let mut doc = SourceDocument::parse("field Q;\nfunctor P = S[1] + S[1];\n").unwrap();
        let p = FunctorRef { name: Some("P".into()), value: doc.model.functors["P"].clone() };
        let q = FunctorRef { name: None, value: PolynomialFunctor::sym(3) };
        doc.push_morphism("f", POINT, p, POINT, q, &crate::corpus::waring(2, 3).unwrap()).unwrap();
        doc
    }

    #[test]
    fn waring_document_round_trips() {
        let doc = waring_document();
        let text = doc.to_string();
        assert!(text.contains("morphism f : point x P -> point x S[3] at dim 3 {"), "{}", text);
        let again = SourceDocument::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.model.morphisms["f"], doc.model.morphisms["f"]);
    }

    #[test]
    fn empty_document() {
        assert!(SourceDocument::parse("  # nothing\n").unwrap().decls.is_empty());
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let src = "morphism g : point x S[1] -> point x S[1] at dim 2 { y.0.0.1 = x.0.0.1; y.0.0.2 = x.0.0.1; }";
        match SourceDocument::parse(src) {
            Err(DocError::Semantic { decl, message, .. }) => {
                assert_eq!(decl, "g");
                assert!(message.contains("not a morphism"), "{}", message);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match SourceDocument::parse("field Q;\nvariety A = { a.1 + } over vars(a.1);") {
            Err(DocError::Syntax { at, .. }) => assert_eq!(at.line, 2),
            other => panic!("{:?}", other),
        }
        assert!(matches!(SourceDocument::parse("subset X = (B, S[1], U=1) { }"), Err(DocError::Syntax { .. })));
        assert!(matches!(SourceDocument::parse("field F7;"), Err(DocError::Unsupported { .. })));
    }

    #[test]
    fn varieties_and_subsets_round_trip() {
        let src = "variety A = {a.1^2 - a.2} over vars(a.1..a.2) prime;\nsubset X = (A, S[1], U=1) { a.1*y.0.0.1 }\n";
        let doc = SourceDocument::parse(src).unwrap();
        assert_eq!(doc.to_string(), src);
        assert!(doc.model.varieties["A"].certified_prime);
    }
}
