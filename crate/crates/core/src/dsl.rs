//! Text and JSON forms of structure equations.
//!
//! ```text
//! n: 3
//! dw1: 0
//! dw2: 0
//! dw3: w1^w2 + w1^~w1 + (1/2+1/4i)*w1^~w2 - w2^~w2
//! ```
//!
//! Statements are separated by newlines or `;`, `#` starts a comment, and
//! `~wk` is the conjugate generator. Generators not mentioned are closed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Form, Generator, Monomial};
use crate::scalar::{format_cx, format_q, parse_q, Cx, Scalar, Q};
use crate::structure::StructureEquations;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    I,
    Plus,
    Minus,
    Star,
    Caret,
    Tilde,
    Colon,
    LParen,
    RParen,
    Sep,
    /// `n`
    Dim,
    /// `dw<j>`
    Dw(usize),
    /// `w<j>`
    W(usize),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: line_no, col });
            match c {
                '#' => break,
                c if c.is_whitespace() => {}
                '+' => push(&mut out, Tok::Plus),
                '-' | '−' => push(&mut out, Tok::Minus),
                '*' => push(&mut out, Tok::Star),
                '^' => push(&mut out, Tok::Caret),
                '~' => push(&mut out, Tok::Tilde),
                ':' => push(&mut out, Tok::Colon),
                '(' => push(&mut out, Tok::LParen),
                ')' => push(&mut out, Tok::RParen),
                ';' => push(&mut out, Tok::Sep),
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '/') {
                        i += 1;
                    }
                    let s: String = chars[start..=i].iter().collect();
                    push(&mut out, Tok::Num(s));
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_alphabetic() {
                        i += 1;
                    }
                    let word: String = chars[start..=i].iter().collect();
                    let mut digits = String::new();
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                        digits.push(chars[i]);
                    }
                    let index = || -> Result<usize> {
                        match digits.parse::<usize>() {
                            Ok(v) if v > 0 => Ok(v),
                            _ => Err(Error::Syntax { line: line_no, col, msg: format!("`{word}` needs a positive index") }),
                        }
                    };
                    let tok = match word.as_str() {
                        "n" if digits.is_empty() => Tok::Dim,
                        "i" if digits.is_empty() => Tok::I,
                        "dw" => Tok::Dw(index()?),
                        "w" => Tok::W(index()?),
                        _ => {
                            return Err(Error::Syntax {
                                line: line_no,
                                col,
                                msg: format!("unexpected identifier `{word}{digits}`"),
                            })
                        }
                    };
                    push(&mut out, tok);
                }
                other => {
                    return Err(Error::Syntax { line: line_no, col, msg: format!("unexpected character `{other}`") })
                }
            }
            i += 1;
        }
        out.push(Spanned { tok: Tok::Sep, line: line_no, col: chars.len() + 1 });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self
            .toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |s| (s.line, s.col));
        Error::Syntax { line, col, msg: msg.into() }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn skip_seps(&mut self) {
        while self.peek() == Some(&Tok::Sep) {
            self.pos += 1;
        }
    }

    fn at_end_of_statement(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Sep))
    }

    /// `RAT [i] | i`
    fn real_or_imag(&mut self) -> Result<Cx> {
        match self.next() {
            Some(Tok::I) => Ok(Cx::imag_unit()),
            Some(Tok::Num(s)) => {
                self.pos -= 1;
                let v = parse_q(&s).map_err(|_| self.err(format!("bad rational `{s}`")))?;
                self.pos += 1;
                if self.peek() == Some(&Tok::I) {
                    self.pos += 1;
                    Ok(Cx::new(Q::zero(), v))
                } else {
                    Ok(Cx::new(v, Q::zero()))
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number"))
            }
        }
    }

    /// Parenthesized complex literal: `[±] part [± part]`.
    fn complex_in_parens(&mut self) -> Result<Cx> {
        let mut acc = Cx::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                Some(Tok::RParen) if !first => break,
                _ if first => false,
                _ => return Err(self.err("expected `+`, `-` or `)`")),
            };
            let v = self.real_or_imag()?;
            acc = acc + if neg { -v } else { v };
            first = false;
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(acc)
    }

    fn generator(&mut self, n: usize) -> Result<Generator> {
        let conj = if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::W(j)) if j <= n => Ok(Generator { index: j, conjugated: conj }),
            Some(Tok::W(j)) => {
                self.pos -= 1;
                Err(self.err(format!("generator w{j} exceeds n = {n}")))
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a generator `wk` or `~wk`"))
            }
        }
    }

    fn term(&mut self, n: usize) -> Result<(Cx, Vec<Generator>)> {
        let coeff = match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.complex_in_parens()?;
                self.expect(Tok::Star, "`*` after coefficient")?;
                c
            }
            Some(Tok::Num(_)) | Some(Tok::I) => {
                let c = self.real_or_imag()?;
                self.expect(Tok::Star, "`*` after coefficient")?;
                c
            }
            _ => Cx::one(),
        };
        let mut gens = vec![self.generator(n)?];
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            gens.push(self.generator(n)?);
        }
        Ok((coeff, gens))
    }

    fn expression(&mut self, n: usize) -> Result<Form<Cx>> {
        let gens = 2 * n;
        if let Some(Tok::Num(s)) = self.peek() {
            if s == "0" {
                let save = self.pos;
                self.pos += 1;
                if self.at_end_of_statement() {
                    return Ok(Form::zero(gens, 2));
                }
                self.pos = save;
            }
        }
        let mut f = Form::zero(gens, 2);
        let mut first = true;
        while !self.at_end_of_statement() {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-` between terms")),
            };
            let start = self.pos;
            let (c, g) = self.term(n)?;
            if g.len() != 2 {
                self.pos = start;
                return Err(self.err(format!("structure equations need 2-forms, found a {}-form", g.len())));
            }
            if let Some((sign, m)) = Monomial::from_generators(&g) {
                let c = if neg { -c } else { c };
                f.add_term(m, if sign < 0 { -c } else { c });
            }
            first = false;
        }
        Ok(f)
    }
}

/// Parses the structure-equation DSL and validates Jacobi and integrability.
pub fn parse_structure_equations(text: &str) -> Result<StructureEquations> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    p.skip_seps();
    p.expect(Tok::Dim, "header `n: <int>`")?;
    p.expect(Tok::Colon, "`:`")?;
    let n = match p.next() {
        Some(Tok::Num(s)) => s.parse::<usize>().ok().filter(|&v| (1..=15).contains(&v)),
        _ => None,
    };
    let Some(n) = n else {
        p.pos -= 1;
        return Err(p.err("n must be an integer in 1..=15"));
    };
    let mut eqs: Vec<Option<Form<Cx>>> = vec![None; n];
    loop {
        p.skip_seps();
        let Some(tok) = p.peek().cloned() else { break };
        let Tok::Dw(j) = tok else {
            return Err(p.err("expected `dw<j>:`"));
        };
        if j > n {
            return Err(p.err(format!("dw{j} exceeds n = {n}")));
        }
        if eqs[j - 1].is_some() {
            return Err(p.err(format!("dw{j} given twice")));
        }
        p.pos += 1;
        p.expect(Tok::Colon, "`:`")?;
        if p.at_end_of_statement() {
            return Err(p.err("empty right-hand side"));
        }
        eqs[j - 1] = Some(p.expression(n)?);
        if !p.at_end_of_statement() {
            return Err(p.err("unexpected token"));
        }
    }
    let holo = eqs.into_iter().map(|f| f.unwrap_or_else(|| Form::zero(2 * n, 2))).collect();
    StructureEquations::new(n, holo)
}

fn format_monomial(m: Monomial) -> String {
    m.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join("^")
}

/// Formats a 2-form right-hand side in the DSL syntax.
pub fn format_rhs(f: &Form<Cx>) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let mono = format_monomial(*m);
        let (neg, mag) = if c.im.is_zero() && c.re < Q::zero() { (true, -c.clone()) } else { (false, c.clone()) };
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&mono);
        } else if mag.im.is_zero() {
            out.push_str(&format!("{}*{}", format_q(&mag.re), mono));
        } else {
            out.push_str(&format!("({})*{}", format_cx(&mag), mono));
        }
    }
    out
}

/// Canonical DSL text; `parse_structure_equations(&print_structure_equations(se)) == se`.
pub fn print_structure_equations(se: &StructureEquations) -> String {
    let mut out = format!("n: {}\n", se.n());
    for j in 1..=se.n() {
        out.push_str(&format!("dw{}: {}\n", j, format_rhs(se.d_holo(j))));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub re: String,
    pub im: String,
    /// `[["w", 1], ["cw", 2]]`
    pub mon: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub equations: Vec<Vec<TermJson>>,
}

pub fn form_terms_json(f: &Form<Cx>) -> Vec<TermJson> {
    f.terms()
        .map(|(m, c)| TermJson {
            re: format_q(&c.re),
            im: format_q(&c.im),
            mon: m
                .generators()
                .iter()
                .map(|g| (if g.conjugated { "cw" } else { "w" }.to_string(), g.index))
                .collect(),
        })
        .collect()
}

pub fn form_from_terms_json(n: usize, degree: usize, terms: &[TermJson]) -> Result<Form<Cx>> {
    let mut f = Form::zero(2 * n, degree);
    for t in terms {
        if t.mon.len() != degree {
            return Err(Error::MixedDegree(degree, t.mon.len()));
        }
        let gens: Vec<Generator> = t
            .mon
            .iter()
            .map(|(kind, j)| match kind.as_str() {
                "w" if (1..=n).contains(j) => Ok(Generator::holo(*j)),
                "cw" if (1..=n).contains(j) => Ok(Generator::anti(*j)),
                _ => Err(Error::Json(format!("bad generator [{kind:?}, {j}]"))),
            })
            .collect::<Result<_>>()?;
        let c = Cx::new(parse_q(&t.re)?, parse_q(&t.im)?);
        if let Some((sign, m)) = Monomial::from_generators(&gens) {
            f.add_term(m, if sign < 0 { -c } else { c });
        }
    }
    Ok(f)
}

pub fn structure_to_json(se: &StructureEquations) -> StructureJson {
    StructureJson { n: se.n(), equations: (1..=se.n()).map(|j| form_terms_json(se.d_holo(j))).collect() }
}

pub fn structure_from_json(js: &StructureJson) -> Result<StructureEquations> {
    if js.equations.len() != js.n {
        return Err(Error::DimensionMismatch { expected: js.n, found: js.equations.len() });
    }
    let holo = js
        .equations
        .iter()
        .map(|terms| form_from_terms_json(js.n, 2, terms))
        .collect::<Result<Vec<_>>>()?;
    StructureEquations::new(js.n, holo)
}

/// Loads either DSL text or its JSON mirror (detected by a leading `{`).
pub fn load_structure(text: &str) -> Result<StructureEquations> {
    if text.trim_start().starts_with('{') {
        let js: StructureJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        structure_from_json(&js)
    } else {
        parse_structure_equations(text)
    }
}
