//! Text front-end for binomials such as `x1^3*x2^2 - x3^5*x4` or
//! `y^2 - x^3`.
//!
//! ```text
//! expr   := ['+'|'-'] term ('+'|'-') term
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! coeff  := uint ['/' uint]
//! factor := ident ['^' uint]
//! ```
//!
//! Identifiers `x<k>` (k >= 1) are pinned to slot `k-1`; other names take the
//! following slots in order of first appearance, unless an explicit variable
//! order is supplied.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::binomial::{Binomial, BinomialState, Coefficient, ExponentVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("expected exactly two terms, found {0}")]
    NotABinomial(usize),
    #[error("coefficient is zero")]
    ZeroCoefficient,
    #[error("variable `{0}` is not in the given variable order")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in the variable order")]
    DuplicateVariable(String),
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize) -> Self {
        ParseError { kind, position }
    }

    fn syntax(msg: impl Into<String>, position: usize) -> Self {
        ParseError::new(ParseErrorKind::Syntax(msg.into()), position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedBinomial {
    pub variables: Vec<String>,
    pub a_raw: ExponentVector,
    pub b_raw: ExponentVector,
    pub rho: Coefficient,
}

impl ParsedBinomial {
    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn to_binomial(&self) -> Binomial {
        Binomial {
            a: self.a_raw.clone(),
            b: self.b_raw.clone(),
            rho: self.rho.clone(),
        }
    }

    pub fn rho_text(&self) -> String {
        self.rho.to_string()
    }
}

impl fmt::Display for ParsedBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = text[i..].chars().next().expect("char boundary");
        let start = i;
        match ch {
            c if c.is_whitespace() => {
                i += c.len_utf8();
            }
            '+' | '-' | '*' | '^' | '/' => {
                let tok = match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    _ => Tok::Slash,
                };
                if tok == Tok::Star && bytes.get(i + 1) == Some(&b'*') {
                    return Err(ParseError::syntax("`**` is not supported, use `^`", i));
                }
                out.push((tok, start));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::syntax(
                    format!("unexpected character `{other}`"),
                    start,
                ));
            }
        }
    }
    Ok(out)
}

struct Term {
    coeff: BigRational,
    factors: Vec<(String, u32)>,
    position: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn uint(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(v),
            _ => Err(ParseError::syntax(format!("expected {what}"), at)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let position = self.offset();
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(Tok::Int(_)) => {
                let num = self.uint("coefficient")?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let at = self.offset();
                    let den = self.uint("denominator")?;
                    if den.is_zero() {
                        return Err(ParseError::syntax("zero denominator", at));
                    }
                    value /= BigRational::from_integer(den);
                }
                if value.is_zero() {
                    return Err(ParseError::new(ParseErrorKind::ZeroCoefficient, position));
                }
                coeff = value;
                if self.peek() != Some(&Tok::Star) {
                    return Ok(Term {
                        coeff,
                        factors,
                        position,
                    });
                }
                self.bump();
                factors.push(self.factor()?);
            }
            Some(Tok::Ident(_)) => factors.push(self.factor()?),
            _ => return Err(ParseError::syntax("expected a term", position)),
        }
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(Term {
            coeff,
            factors,
            position,
        })
    }

    fn factor(&mut self) -> Result<(String, u32), ParseError> {
        let at = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(name)) => name,
            _ => return Err(ParseError::syntax("expected a variable", at)),
        };
        let mut exp = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            let value = self.uint("exponent")?;
            exp = u32::try_from(value).map_err(|_| ParseError::syntax("exponent too large", at))?;
        }
        Ok((name, exp))
    }
}

/// Slot index for names of the form `x<k>`, `k >= 1`.
fn indexed_slot(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<usize>().ok().map(|k| k - 1)
}

/// Parses a two-term expression. With `variable_order`, slots follow that
/// list exactly and every variable must occur in it.
pub fn parse(text: &str, variable_order: Option<&[String]>) -> Result<ParsedBinomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };

    let mut lead_negative = false;
    match p.peek() {
        Some(Tok::Minus) => {
            lead_negative = true;
            p.bump();
        }
        Some(Tok::Plus) => {
            p.bump();
        }
        _ => {}
    }
    let mut terms = vec![p.term()?];
    let mut signs = vec![if lead_negative { -1 } else { 1 }];
    while let Some(tok) = p.peek() {
        let sign = match tok {
            Tok::Plus => 1,
            Tok::Minus => -1,
            _ => return Err(ParseError::syntax("expected `+` or `-`", p.offset())),
        };
        p.bump();
        terms.push(p.term()?);
        signs.push(sign);
    }
    if terms.len() != 2 {
        let at = terms.get(2).map_or(text.len(), |t| t.position);
        return Err(ParseError::new(
            ParseErrorKind::NotABinomial(terms.len()),
            at,
        ));
    }

    let variables = assign_slots(&terms, variable_order)?;
    let slot: HashMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let exponents = |term: &Term| {
        let mut v = vec![0u32; variables.len()];
        for (name, e) in &term.factors {
            v[slot[name.as_str()]] += e;
        }
        ExponentVector::new(v)
    };
    let a_raw = exponents(&terms[0]);
    let b_raw = exponents(&terms[1]);

    // c1 x^A + c2 x^B = c1 (x^A - rho x^B) with rho = -c2 / c1
    let c1 = &terms[0].coeff * BigInt::from(signs[0]);
    let c2 = &terms[1].coeff * BigInt::from(signs[1]);
    let rho = Coefficient::new(-(c2 / c1)).expect("nonzero coefficients");

    Ok(ParsedBinomial {
        variables,
        a_raw,
        b_raw,
        rho,
    })
}

fn assign_slots(terms: &[Term], order: Option<&[String]>) -> Result<Vec<String>, ParseError> {
    if let Some(order) = order {
        for (k, name) in order.iter().enumerate() {
            if order[..k].contains(name) {
                return Err(ParseError::new(
                    ParseErrorKind::DuplicateVariable(name.clone()),
                    0,
                ));
            }
        }
        for term in terms {
            for (name, _) in &term.factors {
                if !order.contains(name) {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownVariable(name.clone()),
                        term.position,
                    ));
                }
            }
        }
        return Ok(order.to_vec());
    }

    let mut seen: Vec<&str> = Vec::new();
    for term in terms {
        for (name, _) in &term.factors {
            if !seen.contains(&name.as_str()) {
                seen.push(name);
            }
        }
    }
    let pinned = seen
        .iter()
        .filter_map(|n| indexed_slot(n))
        .max()
        .map_or(0, |k| k + 1);
    let mut variables: Vec<String> = (1..=pinned).map(|k| format!("x{k}")).collect();
    for name in seen {
        if indexed_slot(name).is_none() {
            variables.push(name.to_string());
        }
    }
    Ok(variables)
}

/// Parses several expressions over one shared variable list. Without an
/// explicit order, indexed names keep their slots and the other names
/// follow in order of first appearance across all expressions. Errors carry
/// the index of the failing expression.
pub fn parse_all(
    texts: &[&str],
    variable_order: Option<&[String]>,
) -> Result<Vec<ParsedBinomial>, (usize, ParseError)> {
    let shared = match variable_order {
        Some(order) => order.to_vec(),
        None => {
            let mut pinned = 0;
            let mut named: Vec<String> = Vec::new();
            for (k, text) in texts.iter().enumerate() {
                let p = parse(text, None).map_err(|e| (k, e))?;
                for v in p.variables {
                    match indexed_slot(&v) {
                        Some(slot) => pinned = pinned.max(slot + 1),
                        None if !named.contains(&v) => named.push(v),
                        None => {}
                    }
                }
            }
            (1..=pinned).map(|k| format!("x{k}")).chain(named).collect()
        }
    };
    texts
        .iter()
        .enumerate()
        .map(|(k, text)| parse(text, Some(&shared)).map_err(|e| (k, e)))
        .collect()
}

/// Renders `x^E` as `x1^3*x2`, or `1` for the empty monomial.
pub fn render_monomial(exps: &ExponentVector, variables: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|&(_, e)| e > 0)
        .map(|(i, e)| {
            if e == 1 {
                variables[i].clone()
            } else {
                format!("{}^{}", variables[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Renders `x^A - rho x^B` in the grammar accepted by [`parse`].
pub fn render_binomial(
    a: &ExponentVector,
    b: &ExponentVector,
    rho: &Coefficient,
    variables: &[String],
) -> String {
    let lhs = render_monomial(a, variables);
    let rhs = render_monomial(b, variables);
    let op = if rho.is_negative() { '+' } else { '-' };
    let mag = rho.abs();
    if mag.is_one() {
        format!("{lhs} {op} {rhs}")
    } else if b.is_zero() {
        format!("{lhs} {op} {mag}")
    } else {
        format!("{lhs} {op} {mag}*{rhs}")
    }
}

pub fn render(p: &ParsedBinomial) -> String {
    render_binomial(&p.a_raw, &p.b_raw, &p.rho, &p.variables)
}

/// Chart label `x^C*(x^A - rho x^B)`, omitting a trivial monomial factor.
pub fn render_state(state: &BinomialState, rho: &Coefficient, variables: &[String]) -> String {
    let inner = render_binomial(&state.a, &state.b, rho, variables);
    if state.c.is_zero() {
        inner
    } else {
        format!("{}*({inner})", render_monomial(&state.c, variables))
    }
}

/// Reads a corpus-style list: one expression per line, `#` starts a comment.
pub fn parse_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(no, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((no + 1, body))
        })
        .collect()
}
