//! Canonical text form of rational functions and a parser for it.
//!
//! Example: `(-2*s*x^2*(s^2*x^2+s*x-s+1))/((1-s*x)^4*(1-x)^2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::factor::Factor;
use super::mono::{fmt_mono, Var};
use super::poly::IntPoly;
use super::ratfunc::RatFunc;
use crate::error::AlgebraError;

/// Writes a numerator as `c*monomial*(primitive part)`; returns whether the
/// text is a single product item (needs no parentheses before `/`).
fn numerator_text(p: &IntPoly) -> (String, bool) {
    if p.is_zero() {
        return ("0".into(), true);
    }
    let m = p.monomial_content();
    let (mut g, mut prim) = p.div_mono(m).expect("monomial content").primitive();
    // Keep the sign in front: never print "-" followed by a sum starting with "-".
    if g.is_negative() && prim.to_string().starts_with('-') {
        g = -g;
        prim = prim.neg();
    }
    let mut parts: Vec<String> = Vec::new();
    let abs = g.abs();
    if !abs.is_one() {
        parts.push(abs.to_string());
    }
    if !m.is_one() {
        let mut s = String::new();
        fmt_mono(m, &mut s).expect("string write");
        parts.push(s);
    }
    let sum = !prim.is_one();
    let neg = g.is_negative();
    let multi = sum && prim.num_terms() > 1;
    if sum {
        parts.push(prim.to_string());
    }
    let single = parts.len() <= 1 && !multi;
    if parts.is_empty() {
        parts.push("1".into());
    }
    if multi && (parts.len() > 1 || neg) {
        let last = parts.pop().unwrap();
        parts.push(format!("({last})"));
    }
    let body = parts.join("*");
    let text = if neg { format!("-{body}") } else { body };
    (text, single && !neg)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, num_single) = numerator_text(self.num());
        let den = self.den();
        if den.is_one() {
            return f.write_str(&num);
        }
        let mut items: Vec<String> = Vec::new();
        if !den.constant().is_one() {
            items.push(den.constant().to_string());
        }
        let mut factors: Vec<(&Factor, &u32)> = den.factors().iter().collect();
        factors.sort_by_key(|(fac, _)| fac.print_key());
        for (fac, &e) in factors {
            let base = match fac {
                Factor::Var(v) => v.to_string(),
                other => format!("({other})"),
            };
            items.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let den_text = if items.len() == 1 {
            items.pop().unwrap()
        } else {
            format!("({})", items.join("*"))
        };
        if num_single {
            write!(f, "{num}/{den_text}")
        } else {
            write!(f, "({num})/{den_text}")
        }
    }
}

#[derive(Debug)]
enum Node {
    Num(BigInt),
    Var(Var),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

impl Node {
    fn eval(&self) -> Result<RatFunc, AlgebraError> {
        Ok(match self {
            Node::Num(n) => RatFunc::integer(n.clone()),
            Node::Var(v) => RatFunc::var(*v),
            Node::Neg(a) => a.eval()?.neg(),
            Node::Add(a, b) => a.eval()?.add(&b.eval()?),
            Node::Sub(a, b) => a.eval()?.sub(&b.eval()?),
            Node::Mul(a, b) => a.eval()?.mul(&b.eval()?),
            Node::Div(a, b) => a.eval()?.mul(&b.eval_inverse()?),
            Node::Pow(a, k) => a.eval()?.pow(*k),
        })
    }

    /// Reciprocal, inverting products factor by factor so that each
    /// denominator factor is recognized on its own.
    fn eval_inverse(&self) -> Result<RatFunc, AlgebraError> {
        match self {
            Node::Neg(a) => Ok(a.eval_inverse()?.neg()),
            Node::Mul(a, b) => Ok(a.eval_inverse()?.mul(&b.eval_inverse()?)),
            Node::Div(a, b) => Ok(a.eval_inverse()?.mul(&b.eval()?)),
            Node::Pow(a, k) => Ok(a.eval_inverse()?.pow(*k)),
            other => other.eval()?.inv(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, AlgebraError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node, AlgebraError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node, AlgebraError> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, AlgebraError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let k: u32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(Node::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Node, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Node::Num(d.parse().expect("digits")))
            }
            Some(c) => match Var::from_name(&(c as char).to_string()) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Node::Var(v))
                }
                None => Err(self.err(&format!("unexpected '{}'", c as char))),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for RatFunc {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let node = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        node.eval()
    }
}

impl FromStr for IntPoly {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: RatFunc = s.parse()?;
        r.as_poly().cloned().ok_or(AlgebraError::Parse {
            pos: 0,
            msg: "not a polynomial".into(),
        })
    }
}

/// Parses a rational function; panics on malformed input. For literals in
/// code and tests.
pub fn rf(s: &str) -> RatFunc {
    s.parse()
        .unwrap_or_else(|e| panic!("bad rational function {s:?}: {e}"))
}
