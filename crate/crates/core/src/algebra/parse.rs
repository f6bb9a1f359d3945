//! Polynomial expression parser: rational literals, named variables,
//! `+ - * / ^`, parentheses. Division is allowed only by constants.

use super::poly::Poly;
use super::scalar::{Field, Q};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
}

fn err(column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { column, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[s..i].iter().collect();
            let q = Q::parse(&lit).ok_or_else(|| err(col, "bad number"))?;
            out.push((Tok::Num(q), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Ident(chars[s..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

struct Parser<'a, R> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nvars: usize,
    resolve: &'a R,
    end_col: usize,
}

impl<'a, R: Fn(&str) -> Option<usize>> Parser<'a, R> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly<Q>, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek_op() {
            if op != '+' && op != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<Q>, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek_op() {
            if op != '*' && op != '/' {
                break;
            }
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(err(col, "division only by nonzero constants"));
                }
                let inv = rhs.constant_coeff().inv()?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<Q>, AlgebraError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<Q>, AlgebraError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Num(q), _)) => {
                    let e = q.to_i64().filter(|e| *e >= 0 && q.is_integer()).ok_or_else(|| err(col, "exponent must be a nonnegative integer"))?;
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                _ => Err(err(col, "expected exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<Q>, AlgebraError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(q), _)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, q))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                let i = (self.resolve)(&name).ok_or_else(|| err(col, format!("unknown variable '{}'", name)))?;
                Ok(Poly::var(self.nvars, i))
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(err(self.col(), "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some((t, _)) => Err(err(col, format!("unexpected token {:?}", t))),
            None => Err(err(col, "unexpected end of expression")),
        }
    }
}

/// Parse `src` into a polynomial over `nvars` variables, resolving names
/// with `resolve`.
pub fn parse_poly<R: Fn(&str) -> Option<usize>>(src: &str, nvars: usize, resolve: &R) -> Result<Poly<Q>, AlgebraError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, nvars, resolve, end_col: src.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(e)
}

/// Parse with an explicit list of variable names.
pub fn parse_with_names(src: &str, names: &[String]) -> Result<Poly<Q>, AlgebraError> {
    parse_poly(src, names.len(), &|s: &str| names.iter().position(|n| n == s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn precedence_and_rationals() {
        let n = names(&["x", "y"]);
        let p = parse_with_names("1/2*x^2 - 3*y + 1", &n).unwrap();
        assert_eq!(p.display(&n), "1/2*x^2 - 3*y + 1");
        let q = parse_with_names("-(x+y)^2", &n).unwrap();
        assert_eq!(q.display(&n), "-x^2 - 2*x*y - y^2");
    }

    #[test]
    fn dotted_names() {
        let n = names(&["y.0.0.11", "a.1"]);
        let p = parse_with_names("y.0.0.11*a.1", &n).unwrap();
        assert_eq!(p.display(&n), "y.0.0.11*a.1");
    }

    #[test]
    fn errors_carry_columns() {
        let n = names(&["x"]);
        match parse_with_names("x + z", &n) {
            Err(AlgebraError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{:?}", other),
        }
        assert!(parse_with_names("x/x", &n).is_err());
        assert!(parse_with_names("(x", &n).is_err());
    }
}
