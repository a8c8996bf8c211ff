//! Problem files.
//!
//! ```text
//! # comment
//! ring: char=7 vars=[X1,X2,X3,X4]
//! ideal I1: X1, X2
//! ideal I2: X3, 3*X1 + X4
//! base P: X4
//! coeff-chars: 2, 0, 7
//! dim-cap: 3
//! ```
//!
//! Expressions use integers, declared variables, `+ - * ^`, parentheses and
//! rational literals `p/q` (characteristic 0 only). The ring line comes
//! first. Homogeneity is not checked here.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::analysis::HypothesisError;
use crate::field::FieldSpec;
use crate::ideal::{Ideal, IdealError};
use crate::poly::{Monomial, MonomialOrder, Polynomial, RingContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    Semantic(String),
}

/// A positioned failure; line and column are 1-based, columns count
/// characters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected one of {{{}}}, found {found}", expected.join(", "))
            }
            ParseErrorKind::Semantic(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub generators: Vec<Polynomial>,
}

impl NamedIdeal {
    /// The ideal, with homogeneity failures attributed to this name.
    pub fn to_ideal(&self, ring: &Arc<RingContext>) -> Result<Ideal, HypothesisError> {
        Ideal::new(ring, self.generators.clone()).map_err(|e| match e {
            IdealError::Inhomogeneous { index, poly } => HypothesisError::Inhomogeneous {
                name: self.name.clone(),
                index: index + 1,
                poly,
            },
            _ => HypothesisError::RingMismatch,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: Arc<RingContext>,
    pub ideals: Vec<NamedIdeal>,
    pub bases: Vec<NamedIdeal>,
    pub coeff_chars: Option<Vec<u64>>,
    pub dim_cap: Option<usize>,
}

impl ProblemFile {
    pub fn names(&self) -> Vec<String> {
        self.ideals.iter().map(|i| i.name.clone()).collect()
    }

    pub fn primes(&self) -> Result<Vec<Ideal>, HypothesisError> {
        self.ideals.iter().map(|i| i.to_ideal(&self.ring)).collect()
    }

    pub fn base_ideals(&self) -> Result<Vec<Ideal>, HypothesisError> {
        self.bases.iter().map(|i| i.to_ideal(&self.ring)).collect()
    }

    /// Canonical text; parsing it gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "ring: char={} vars=[{}]\n",
            self.ring.field().characteristic(),
            self.ring.names().join(",")
        );
        if let Some(chars) = &self.coeff_chars {
            let list: Vec<String> = chars.iter().map(u64::to_string).collect();
            out.push_str(&format!("coeff-chars: {}\n", list.join(", ")));
        }
        if let Some(cap) = self.dim_cap {
            out.push_str(&format!("dim-cap: {cap}\n"));
        }
        for (kw, list) in [("ideal", &self.ideals), ("base", &self.bases)] {
            for ideal in list {
                let gens: Vec<String> = ideal.generators.iter().map(ToString::to_string).collect();
                out.push_str(&format!("{kw} {}: {}\n", ideal.name, gens.join(", ")).replace(": \n", ":\n"));
            }
        }
        out
    }
}

/// Keeps arbitrary input from exhausting the stack or memory.
const MAX_NESTING: usize = 64;
const MAX_TERMS: u128 = 200_000;
const MAX_DEGREE: u64 = 1 << 16;
const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

struct Line<'a> {
    line: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: Option<&'a Arc<RingContext>>,
    depth: usize,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^/(),:[]=".contains(c) {
            toks.push((Tok::Punct(c), col));
            i += 1;
        } else {
            return Err(ParseError {
                line,
                column: col,
                kind: ParseErrorKind::Syntax {
                    expected: vec!["expression".into()],
                    found: format!("character {c:?}"),
                },
            });
        }
    }
    toks.push((Tok::End, col0 + chars.len()));
    Ok(toks)
}

impl<'a> Line<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: self.col(),
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: self.peek().describe(),
            },
        })
    }

    fn semantic<T>(&self, column: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column,
            kind: ParseErrorKind::Semantic(msg.into()),
        })
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(&[&format!("`{c}`")])
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.syntax(&["identifier"]),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.syntax(&[kw]),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.syntax(&["integer"]),
        }
    }

    fn small_int<T: TryFrom<u64>>(&mut self, what: &str) -> Result<T, ParseError> {
        let col = self.col();
        let n = self.int()?;
        match n.to_u64().and_then(|v| T::try_from(v).ok()) {
            Some(v) => Ok(v),
            None => self.semantic(col, format!("{what} {n} is out of range")),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.syntax(&["`,`", "end of line"])
        }
    }

    fn ring(&self) -> &'a Arc<RingContext> {
        self.ring.expect("ring checked before expressions")
    }

    fn expr_list(&mut self) -> Result<Vec<Polynomial>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::End {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat(',') {
                break;
            }
        }
        self.end()?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let col = self.col();
            let rhs = self.factor()?;
            let degree = acc.total_degree().unwrap_or(0) as u64 + rhs.total_degree().unwrap_or(0) as u64;
            if (acc.len() as u128) * (rhs.len() as u128) > MAX_TERMS || degree > MAX_DEGREE {
                return self.semantic(col, "product is too large");
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        let sign = if self.eat('-') {
            Some(true)
        } else if self.eat('+') {
            Some(false)
        } else {
            None
        };
        if let Some(negate) = sign {
            if self.depth >= MAX_NESTING {
                return self.semantic(col, "signs nested too deeply");
            }
            self.depth += 1;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(if negate { -&inner } else { inner });
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let e: u32 = self.small_int("exponent")?;
        if e > MAX_EXPONENT || base.total_degree().unwrap_or(0) as u64 * e as u64 > MAX_DEGREE {
            return self.semantic(col, "exponent is too large");
        }
        if base.len() <= 1 {
            if let Some((m, c)) = base.leading() {
                let exps = m.exponents().iter().map(|&x| x * e).collect();
                let term = (Monomial::from_exponents(exps), c.pow(e as u64));
                return Ok(Polynomial::from_terms(self.ring(), MonomialOrder::Grevlex, vec![term]));
            }
            return Ok(if e == 0 {
                Polynomial::constant(self.ring(), self.ring().field().one())
            } else {
                base
            });
        }
        if multiset_count(base.len() as u128, e as u128) > MAX_TERMS {
            return self.semantic(col, "power is too large");
        }
        let mut out = Polynomial::constant(self.ring(), self.ring().field().one());
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let ring = self.ring();
        let col = self.col();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let field = ring.field();
                let value = if self.eat('/') {
                    let dcol = self.col();
                    let d = self.int()?;
                    if !field.is_rational() {
                        return self.semantic(col, format!("rational literal in characteristic {}", field.characteristic()));
                    }
                    if d.is_zero() {
                        return self.semantic(dcol, "zero denominator");
                    }
                    field.from_ratio(&n, &d).expect("nonzero denominator")
                } else {
                    field.from_bigint(&n)
                };
                Ok(Polynomial::constant(ring, value))
            }
            Tok::Ident(name) => {
                self.bump();
                match ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(ring, i)),
                    None => self.semantic(col, format!("unknown variable `{name}`")),
                }
            }
            Tok::Punct('(') => {
                if self.depth >= MAX_NESTING {
                    return self.semantic(col, "parentheses nested too deeply");
                }
                self.bump();
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                self.punct(')')?;
                Ok(inner)
            }
            _ => self.syntax(&["integer", "variable", "`(`", "`-`"]),
        }
    }
}

/// Number of monomials of degree at most `e` in `k` symbols, saturating;
/// bounds the size of a `k`-term polynomial raised to the `e`.
fn multiset_count(k: u128, e: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..k {
        acc = acc.saturating_mul(e + i) / i;
        if acc > MAX_TERMS {
            return acc;
        }
    }
    acc
}

const DECLARATIONS: [&str; 5] = ["ring:", "ideal", "base", "coeff-chars:", "dim-cap:"];

pub fn parse_problem_bytes(bytes: &[u8]) -> Result<ProblemFile, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_problem(s),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let tail = valid.rsplit(|&b| b == b'\n').next().unwrap_or(&[]);
            let column = String::from_utf8_lossy(tail).chars().count() + 1;
            Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::Semantic("input is not valid UTF-8".into()),
            })
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut ring: Option<Arc<RingContext>> = None;
    let mut ideals: Vec<NamedIdeal> = Vec::new();
    let mut bases: Vec<NamedIdeal> = Vec::new();
    let mut coeff_chars = None;
    let mut dim_cap = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.chars().count() - trimmed.chars().count();
        let Some(kw) = DECLARATIONS.iter().find(|kw| {
            trimmed.starts_with(*kw)
                && (kw.ends_with(':') || trimmed[kw.len()..].starts_with(char::is_whitespace))
        }) else {
            let found = trimmed.split_whitespace().next().unwrap_or("").to_string();
            return Err(ParseError {
                line: line_no,
                column: indent + 1,
                kind: ParseErrorKind::Syntax {
                    expected: DECLARATIONS.iter().map(|s| s.to_string()).collect(),
                    found: format!("`{found}`"),
                },
            });
        };
        let rest = &trimmed[kw.len()..];
        let toks = tokenize(rest, line_no, indent + kw.chars().count() + 1)?;
        let mut p = Line {
            line: line_no,
            toks,
            pos: 0,
            ring: ring.as_ref(),
            depth: 0,
        };
        let decl_col = indent + 1;
        if *kw != "ring:" && ring.is_none() {
            return p.semantic(decl_col, "the ring must be declared first");
        }
        match *kw {
            "ring:" => {
                if ring.is_some() {
                    return p.semantic(decl_col, "ring declared twice");
                }
                p.keyword("char")?;
                p.punct('=')?;
                let ccol = p.col();
                let ch: u64 = p.small_int("characteristic")?;
                let field = match FieldSpec::new(ch) {
                    Ok(f) => f,
                    Err(e) => return p.semantic(ccol, e.to_string()),
                };
                p.keyword("vars")?;
                p.punct('=')?;
                p.punct('[')?;
                let mut names = Vec::new();
                loop {
                    let vcol = p.col();
                    let name = p.ident()?;
                    if names.contains(&name) {
                        return p.semantic(vcol, format!("variable `{name}` declared twice"));
                    }
                    names.push(name);
                    if !p.eat(',') {
                        break;
                    }
                }
                p.punct(']')?;
                p.end()?;
                match RingContext::new(field, names) {
                    Ok(r) => ring = Some(r),
                    Err(e) => return p.semantic(decl_col, e.to_string()),
                }
            }
            "ideal" | "base" => {
                let ncol = p.col();
                let name = p.ident()?;
                if ideals.iter().chain(&bases).any(|i| i.name == name) {
                    return p.semantic(ncol, format!("name `{name}` is already used"));
                }
                p.punct(':')?;
                let generators = p.expr_list()?;
                let entry = NamedIdeal { name, generators };
                if *kw == "ideal" {
                    ideals.push(entry);
                } else {
                    bases.push(entry);
                }
            }
            "coeff-chars:" => {
                if coeff_chars.is_some() {
                    return p.semantic(decl_col, "coeff-chars declared twice");
                }
                let mut list = Vec::new();
                loop {
                    let ccol = p.col();
                    let ch: u64 = p.small_int("characteristic")?;
                    if let Err(e) = FieldSpec::new(ch) {
                        return p.semantic(ccol, e.to_string());
                    }
                    list.push(ch);
                    if !p.eat(',') {
                        break;
                    }
                }
                p.end()?;
                coeff_chars = Some(list);
            }
            "dim-cap:" => {
                if dim_cap.is_some() {
                    return p.semantic(decl_col, "dim-cap declared twice");
                }
                dim_cap = Some(p.small_int::<usize>("dim-cap")?);
                p.end()?;
            }
            _ => unreachable!("declaration keywords are exhaustive"),
        }
    }

    let Some(ring) = ring else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            kind: ParseErrorKind::Semantic("no ring declared".into()),
        });
    };
    Ok(ProblemFile {
        ring,
        ideals,
        bases,
        coeff_chars,
        dim_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let p = parse_problem("ring: char=7 vars=[X1,X2]\nideal I1: X1, X2\n").unwrap();
        assert_eq!(p.ideals.len(), 1);
        assert_eq!(p.ideals[0].generators.len(), 2);
        assert_eq!(p.ring.field().characteristic(), 7);
    }

    #[test]
    fn realization_ideal() {
        let text = "ring: char=7 vars=[X1,X2,X3,X4,X5,X6]\nideal I4: X1+X3+X6, 3*X1+X4+4*X6\n";
        let p = parse_problem(text).unwrap();
        let rendered: Vec<String> = p.ideals[0].generators.iter().map(ToString::to_string).collect();
        assert_eq!(rendered, vec!["X1 + X3 + X6", "3*X1 + X4 + 4*X6"]);
    }

    #[test]
    fn arithmetic() {
        let p = parse_problem("ring: char=0 vars=[x,y]\nideal J: (x - y)^2 - x*(x - 2*y), 1/2*x - -y, -x^3\n").unwrap();
        let g: Vec<String> = p.ideals[0].generators.iter().map(ToString::to_string).collect();
        assert_eq!(g, vec!["y^2", "1/2*x + y", "-x^3"]);
    }

    #[test]
    fn inhomogeneous_passes_parser() {
        let p = parse_problem("ring: char=0 vars=[X1,X2]\nideal J: X1^2 + X2\n").unwrap();
        let err = p.primes().unwrap_err();
        assert!(matches!(err, HypothesisError::Inhomogeneous { ref name, index: 1, .. } if name == "J"));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_problem("ring: char=7 vars=[X1]\nideal I: X1 + X9\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        assert_eq!(e.kind, ParseErrorKind::Semantic("unknown variable `X9`".into()));

        let e = parse_problem("ring: char=7 vars=[X1]\nideal I: 1/2*X1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));

        let e = parse_problem("ring: char=7 vars=[X1]\nideal I: X1 +\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 14));
        assert!(matches!(e.kind, ParseErrorKind::Syntax { ref found, .. } if found == "end of line"));

        let e = parse_problem("ring: char=7 vars=[X1]\nideal I: X1\nideal I: X1\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = parse_problem("ideal I: X1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic("the ring must be declared first".into()));

        let e = parse_problem("ring: char=6 vars=[X1]\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 12));

        let e = parse_problem("rings: char=6\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1, column 1: expected one of {ring:, ideal, base, coeff-chars:, dim-cap:}"));
    }

    #[test]
    fn directives_and_round_trip() {
        let text = "# example\nring: char=0 vars=[X1,X2,X3]\ncoeff-chars: 2, 0, 7\ndim-cap: 3\nideal A: X1, -1/3*X2 + X3  # trailing\nbase P: X3\nideal Z:\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.coeff_chars, Some(vec![2, 0, 7]));
        assert_eq!(p.dim_cap, Some(3));
        assert_eq!(p.bases.len(), 1);
        assert!(p.ideals[1].generators.is_empty());
        assert_eq!(parse_problem(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn resource_guards() {
        let deep = format!("ring: char=0 vars=[x]\nideal I: {}x{}\n", "(".repeat(500), ")".repeat(500));
        assert!(parse_problem(&deep).is_err());
        assert!(parse_problem("ring: char=0 vars=[x,y,z]\nideal I: (x+y+z)^100000\n").is_err());
        assert!(parse_problem("ring: char=0 vars=[x]\nideal I: x^4000000000\n").is_err());
        let signs = format!("ring: char=0 vars=[x]\nideal I: {}x\n", "-".repeat(100_000));
        assert!(parse_problem(&signs).is_err());
        assert!(parse_problem_bytes(b"ring: char=7 vars=[X1]\nideal I: \xff\n").is_err());
    }
}
