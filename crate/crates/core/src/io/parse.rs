//! Ideal files.
//!
//! ```text
//! # comment
//! field padic 3
//! ring x1 x2 x3
//! gens
//! x1^2 + 3*x1 - 1
//! weights
//! w = 0,0,-1/2
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{MPoly, Ring};
use crate::scalars::{parse_rat_list, FieldConfig, Padic, Puiseux, Rat, ValuedField};

/// Generators together with the ring they live in.
#[derive(Clone, Debug, PartialEq)]
pub struct System<F: ValuedField> {
    pub ring: Ring<F>,
    pub gens: Vec<MPoly<F>>,
}

impl<F: ValuedField> System<F> {
    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(self.ring.field.clone(), self.ring.nvars(), self.gens.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnySystem {
    Puiseux(System<Puiseux>),
    Padic(System<Padic>),
}

impl AnySystem {
    pub fn field(&self) -> FieldConfig {
        match self {
            AnySystem::Puiseux(_) => FieldConfig::Puiseux,
            AnySystem::Padic(s) => s.ring.field.config(),
        }
    }

    pub fn names(&self) -> &[String] {
        match self {
            AnySystem::Puiseux(s) => &s.ring.names,
            AnySystem::Padic(s) => &s.ring.names,
        }
    }

    pub fn generator_strings(&self) -> Vec<String> {
        match self {
            AnySystem::Puiseux(s) => s.gens.iter().map(|g| s.ring.fmt_poly(g)).collect(),
            AnySystem::Padic(s) => s.gens.iter().map(|g| s.ring.fmt_poly(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealFile {
    pub system: AnySystem,
    /// Named weight vectors, in file order.
    pub weights: Vec<(String, Vec<Rat>)>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax { line, col, msg: msg.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
}

/// Non-empty lines with comments removed, as (line number, column offset, text).
fn content_lines(text: &str) -> Vec<(usize, usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let trimmed = l.trim_start();
            let off = l.len() - trimmed.len();
            let t = trimmed.trim_end();
            (!t.is_empty()).then_some((i + 1, off + 1, t))
        })
        .collect()
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    let lines = content_lines(text);
    let mut it = lines.into_iter().peekable();
    let (ln, col, l) = it.next().ok_or_else(|| syntax(1, 1, "empty file", &["field"]))?;
    let words: Vec<&str> = l.split_whitespace().collect();
    let field = match words.as_slice() {
        ["field", "puiseux"] => FieldConfig::Puiseux,
        ["field", "padic", p] => {
            let p: u64 = p.parse().map_err(|_| syntax(ln, col + l.rfind(p).unwrap_or(0), format!("bad prime '{p}'"), &["integer"]))?;
            Padic::new(p)?.config()
        }
        ["field", ..] => return Err(syntax(ln, col + 6, "unknown field", &["puiseux", "padic <p>"])),
        _ => return Err(syntax(ln, col, format!("unexpected '{}'", words[0]), &["field"])),
    };
    let (ln, col, l) = it.next().ok_or_else(|| syntax(ln + 1, 1, "missing ring line", &["ring"]))?;
    let mut words = l.split_whitespace();
    if words.next() != Some("ring") {
        return Err(syntax(ln, col, "expected ring declaration", &["ring"]));
    }
    let mut names: Vec<String> = Vec::new();
    for w in words {
        let ok = w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let at = col + l.find(w).unwrap_or(0);
        if !ok {
            return Err(syntax(ln, at, format!("invalid variable name '{w}'"), &["identifier"]));
        }
        if names.iter().any(|n| n == w) {
            return Err(syntax(ln, at, format!("duplicate variable '{w}'"), &["new identifier"]));
        }
        if w == "t" && field == FieldConfig::Puiseux {
            return Err(syntax(ln, at, "'t' names the uniformizer", &["identifier other than t"]));
        }
        names.push(w.to_string());
    }
    if names.is_empty() {
        return Err(syntax(ln, col + l.len(), "ring without variables", &["identifier"]));
    }
    let (ln, col, l) = it.next().ok_or_else(|| syntax(ln + 1, 1, "missing gens line", &["gens"]))?;
    if l != "gens" {
        return Err(syntax(ln, col, format!("unexpected '{l}'"), &["gens"]));
    }
    let mut gen_lines = Vec::new();
    let mut weights = Vec::new();
    let mut in_weights = false;
    for (ln, col, l) in it {
        if l == "weights" && !in_weights {
            in_weights = true;
            continue;
        }
        if in_weights {
            let (name, vals) = l.split_once('=').ok_or_else(|| syntax(ln, col, "expected weight assignment", &["name = a,b,..."]))?;
            let v = parse_rat_list(vals).ok_or_else(|| syntax(ln, col + name.len() + 1, "bad rational list", &["a,b,..."]))?;
            if v.len() != names.len() {
                return Err(Error::LengthMismatch { expected: names.len(), got: v.len() });
            }
            weights.push((name.trim().to_string(), v));
        } else {
            gen_lines.push((ln, col, l));
        }
    }
    let system = match field {
        FieldConfig::Puiseux => AnySystem::Puiseux(parse_system(Puiseux, names, &gen_lines)?),
        FieldConfig::Padic(p) => AnySystem::Padic(parse_system(Padic::new(p)?, names, &gen_lines)?),
    };
    Ok(IdealFile { system, weights })
}

fn parse_system<F: ValuedField>(field: F, names: Vec<String>, lines: &[(usize, usize, &str)]) -> Result<System<F>> {
    let ring = Ring::new(field, names);
    let gens = lines.iter().map(|(ln, col, l)| parse_polynomial(&ring, l, *ln, *col)).collect::<Result<_>>()?;
    Ok(System { ring, gens })
}

/// Parses one polynomial expression; `line` and `col` locate its first
/// character for error messages.
pub fn parse_polynomial<F: ValuedField>(ring: &Ring<F>, text: &str, line: usize, col: usize) -> Result<MPoly<F>> {
    let mut p = Parser { ring, chars: text.char_indices().collect(), pos: 0, line, col0: col };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos].1), &["+", "-", "*", "/", "^", "end of line"]));
    }
    Ok(e)
}

struct Parser<'a, F: ValuedField> {
    ring: &'a Ring<F>,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<F: ValuedField> Parser<'_, F> {
    fn err(&self, msg: String, expected: &[&str]) -> Error {
        syntax(self.line, self.col0 + self.pos, msg, expected)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
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

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = d
                    .as_constant()
                    .filter(|c| !self.ring.field.is_zero(c))
                    .ok_or_else(|| syntax(self.line, self.col0 + at, "division by a non-constant or zero", &["nonzero constant"]))?;
                acc = acc.scale(&self.ring.field.inv(&c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly<F>> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly<F>> {
        self.skip_ws();
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base.0);
        }
        self.skip_ws();
        let at = self.pos;
        let e = self.exponent()?;
        match base.1 {
            Atom::Uniformizer => {
                let c = self
                    .ring
                    .field
                    .uniformizer_pow(&e)
                    .map_err(|_| syntax(self.line, self.col0 + at, "exponent not allowed here", &["integer"]))?;
                Ok(self.ring.constant(c))
            }
            Atom::Other => {
                let n = (e.is_integer() && e >= Rat::zero()).then(|| e.to_integer().to_u32()).flatten();
                match n {
                    Some(n) => Ok(base.0.pow(n)),
                    None => Err(syntax(
                        self.line,
                        self.col0 + start,
                        format!("exponent {e} must be a nonnegative integer"),
                        &["nonnegative integer"],
                    )),
                }
            }
        }
    }

    /// `7`, `-2` or `(a/b)` with an optional sign inside.
    fn exponent(&mut self) -> Result<Rat> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
            if d.is_zero() {
                return Err(self.err("zero denominator".into(), &["nonzero integer"]));
            }
            if !self.eat(')') {
                return Err(self.err("unclosed exponent".into(), &[")"]));
            }
            let r = Rat::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let n = Rat::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number".into(), &["integer"]));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<(MPoly<F>, Atom)> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("unclosed parenthesis".into(), &[")"]));
                }
                Ok((e, Atom::Other))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok((self.ring.constant(self.ring.field.from_rat(&Rat::from_integer(n))), Atom::Other))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                if let Some(i) = self.ring.index_of(&name) {
                    return Ok((self.ring.var(i), Atom::Other));
                }
                if name == "t" && self.ring.field.config() == FieldConfig::Puiseux {
                    let t = self.ring.field.uniformizer_pow(&Rat::from_integer(1.into()))?;
                    return Ok((self.ring.constant(t), Atom::Uniformizer));
                }
                Err(Error::UnknownVariable { name, line: self.line, col: self.col0 + start })
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"), &["number", "variable", "("])),
            None => Err(self.err("unexpected end of line".into(), &["number", "variable", "("])),
        }
    }
}

enum Atom {
    Uniformizer,
    Other,
}

/// Text that [`parse_ideal_file`] reads back to the same file.
pub fn print_ideal_file(file: &IdealFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}", file.system.field());
    let _ = writeln!(s, "ring {}", file.system.names().join(" "));
    s.push_str("gens\n");
    for g in file.system.generator_strings() {
        let _ = writeln!(s, "{g}");
    }
    if !file.weights.is_empty() {
        s.push_str("weights\n");
        for (name, w) in &file.weights {
            let v: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{name} = {}", v.join(","));
        }
    }
    s
}
