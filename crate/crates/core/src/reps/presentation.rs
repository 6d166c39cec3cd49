//! Symbolic presentations of complete local rings: generators with a kind,
//! relation strings, and counts of extra formal variables.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::RingElem;

use super::RepsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Unit,
    MaximalIdeal,
    Unrestricted,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Unit => "unit",
            GenKind::MaximalIdeal => "maximal-ideal",
            GenKind::Unrestricted => "unrestricted",
        }
    }
}

impl Serialize for GenKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// The coefficient ring itself.
    O,
    /// Power series over it.
    OPowerSeries,
}

impl Serialize for Base {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Base::O => "O",
            Base::OPowerSeries => "O-power-series",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentation {
    base: Base,
    gens: Vec<Generator>,
    relations: Vec<String>,
    #[serde(rename = "extra")]
    extra_formal_vars: (u32, u32),
}

impl RingPresentation {
    /// Validates that every relation parses over the declared generators.
    pub fn new(
        base: Base,
        gens: Vec<Generator>,
        relations: Vec<String>,
        extra_formal_vars: (u32, u32),
    ) -> Result<Self, RepsError> {
        let mut seen = std::collections::HashSet::new();
        for g in &gens {
            if g.name == "p" || !is_ident(&g.name) || !seen.insert(g.name.as_str()) {
                return Err(RepsError::Parse(format!("bad generator name {:?}", g.name)));
            }
        }
        let out = RingPresentation {
            base,
            gens,
            relations,
            extra_formal_vars,
        };
        for rel in &out.relations {
            out.parse_relation(rel)?;
        }
        Ok(out)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn relations(&self) -> &[String] {
        &self.relations
    }

    pub fn extra_formal_vars(&self) -> (u32, u32) {
        self.extra_formal_vars
    }

    /// Krull-style count: generators minus relations.
    pub fn dimension_count(&self) -> i64 {
        self.gens.len() as i64 - self.relations.len() as i64
    }

    pub fn parse_relation(&self, src: &str) -> Result<Expr, RepsError> {
        let names: Vec<&str> = self.gens.iter().map(|g| g.name.as_str()).collect();
        Parser::new(src, &names)?.parse()
    }

    /// Checks an assignment of ring elements to generators against the
    /// kinds and relations. `p` evaluates to the prime of the ring.
    pub fn is_point(&self, values: &HashMap<String, RingElem>) -> Result<bool, RepsError> {
        for g in &self.gens {
            let v = values
                .get(&g.name)
                .ok_or_else(|| RepsError::Parse(format!("no value for {}", g.name)))?;
            let ok = match g.kind {
                GenKind::Unit => v.is_unit(),
                GenKind::MaximalIdeal => !v.is_unit(),
                GenKind::Unrestricted => true,
            };
            if !ok {
                return Ok(false);
            }
        }
        for rel in &self.relations {
            if !self.parse_relation(rel)?.eval(values)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parsed relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    P,
    Int(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, values: &HashMap<String, RingElem>) -> Result<RingElem, RepsError> {
        let ring = values
            .values()
            .next()
            .ok_or_else(|| RepsError::Parse("empty assignment".into()))?
            .ring()
            .clone();
        self.eval_in(&ring, values)
    }

    fn eval_in(
        &self,
        ring: &std::sync::Arc<crate::arith::LocalRing>,
        values: &HashMap<String, RingElem>,
    ) -> Result<RingElem, RepsError> {
        Ok(match self {
            Expr::Var(n) => values
                .get(n)
                .cloned()
                .ok_or_else(|| RepsError::Parse(format!("no value for {n}")))?,
            Expr::P => ring.from_int(ring.p() as i64),
            Expr::Int(c) => ring.from_int(*c),
            Expr::Neg(a) => -a.eval_in(ring, values)?,
            Expr::Add(a, b) => a.eval_in(ring, values)?.try_add(&b.eval_in(ring, values)?)?,
            Expr::Sub(a, b) => a.eval_in(ring, values)?.try_sub(&b.eval_in(ring, values)?)?,
            Expr::Mul(a, b) => a.eval_in(ring, values)?.try_mul(&b.eval_in(ring, values)?)?,
            Expr::Pow(a, e) => a.eval_in(ring, values)?.pow(*e as u64),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Op(char),
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn new(src: &str, names: &'a [&'a str]) -> Result<Self, RepsError> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse()
                    .map_err(|_| RepsError::Parse(format!("integer too large: {s}")))?;
                toks.push(Tok::Int(v));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            } else if "+-*^()".contains(c) {
                toks.push(Tok::Op(c));
                i += 1;
            } else {
                return Err(RepsError::Parse(format!("unexpected character {c:?} in {src:?}")));
            }
        }
        Ok(Parser { toks, pos: 0, names })
    }

    fn parse(mut self) -> Result<Expr, RepsError> {
        let e = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(RepsError::Parse(format!("trailing input at token {}", self.pos)));
        }
        Ok(e)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, RepsError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, RepsError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, RepsError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(e)) if e >= 0 && e <= u32::MAX as i64 => {
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e as u32));
                }
                _ => return Err(RepsError::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, RepsError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| RepsError::Parse("unexpected end of relation".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Ident(n) if n == "p" => Ok(Expr::P),
            Tok::Ident(n) if self.names.contains(&n.as_str()) => Ok(Expr::Var(n)),
            Tok::Ident(n) => Err(RepsError::Parse(format!("undeclared symbol {n}"))),
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(RepsError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Tok::Op(c) => Err(RepsError::Parse(format!("unexpected {c:?}"))),
        }
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.gens.iter().map(|g| g.name.as_str()).collect();
        write!(f, "O[[{}]]", names.join(", "))?;
        if !self.relations.is_empty() {
            write!(f, "/({})", self.relations.join(", "))?;
        }
        Ok(())
    }
}
