//! Scaling expressions in `n`, such as `floor: n^(1/4) * 3` or `2*log(n)`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! scaling := [("floor" | "ceil" | "round") ":"] expr
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ["^" unary]          right-associative
//! atom    := number | "n" | "log" "(" expr ")" | "(" expr ")"
//! ```
//!
//! `log` is the natural logarithm. The rounding mode defaults to `round`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("division by zero at byte {offset}")]
    DivisionByZero { offset: usize },
    #[error("log of non-positive value {value} at byte {offset}")]
    LogDomain { offset: usize, value: f64 },
    #[error("expression evaluates to non-finite value at n={n}")]
    NonFinite { n: f64 },
    #[error("expression evaluates to {value} at n={n}, expected a positive integer")]
    NotPositive { n: f64, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    Floor,
    Ceil,
    #[default]
    Round,
}

impl Rounding {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Rounding::Floor => x.floor(),
            Rounding::Ceil => x.ceil(),
            Rounding::Round => x.round(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    N,
    Neg(Box<Node>),
    Log { arg: Box<Node>, offset: usize },
    Bin { op: Op, lhs: Box<Node>, rhs: Box<Node>, offset: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// A parsed expression plus its rounding mode. Serializes as its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingExpr {
    text: String,
    rounding: Rounding,
    root: Node,
}

impl ScalingExpr {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        parse_scaling(text)
    }

    /// A constant expression.
    pub fn constant(value: u64) -> Self {
        ScalingExpr {
            text: value.to_string(),
            rounding: Rounding::Round,
            root: Node::Num(value as f64),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// The unrounded value at `n`.
    pub fn eval(&self, n: f64) -> Result<f64, ExprError> {
        let v = eval(&self.root, n)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::NonFinite { n })
        }
    }

    /// The rounded value at `n`, which must be a positive integer.
    pub fn eval_positive(&self, n: u64) -> Result<u64, ExprError> {
        let x = n as f64;
        let v = self.rounding.apply(self.eval(x)?);
        if v < 1.0 || v > u32::MAX as f64 {
            return Err(ExprError::NotPositive { n: x, value: v });
        }
        Ok(v as u64)
    }
}

impl fmt::Display for ScalingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl FromStr for ScalingExpr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        parse_scaling(s)
    }
}

impl Serialize for ScalingExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for ScalingExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // Bare JSON numbers are accepted as constants.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(u64),
            Float(f64),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Text(t) => t,
            Raw::Int(i) => i.to_string(),
            Raw::Float(f) => f.to_string(),
        };
        parse_scaling(&text).map_err(serde::de::Error::custom)
    }
}

fn eval(node: &Node, n: f64) -> Result<f64, ExprError> {
    Ok(match node {
        Node::Num(v) => *v,
        Node::N => n,
        Node::Neg(a) => -eval(a, n)?,
        Node::Log { arg, offset } => {
            let v = eval(arg, n)?;
            if v <= 0.0 {
                return Err(ExprError::LogDomain { offset: *offset, value: v });
            }
            v.ln()
        }
        Node::Bin { op, lhs, rhs, offset } => {
            let (a, b) = (eval(lhs, n)?, eval(rhs, n)?);
            match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
                Op::Div => {
                    if b == 0.0 {
                        return Err(ExprError::DivisionByZero { offset: *offset });
                    }
                    a / b
                }
                Op::Pow => a.powf(b),
            }
        }
    })
}

/// Parses `text` per the module grammar.
pub fn parse_scaling(text: &str) -> Result<ScalingExpr, ExprError> {
    let mut rounding = Rounding::Round;
    let mut start = 0;
    if let Some(colon) = text.find(':') {
        let mode = text[..colon].trim();
        rounding = match mode {
            "floor" => Rounding::Floor,
            "ceil" => Rounding::Ceil,
            "round" => Rounding::Round,
            _ => {
                return Err(ExprError::Syntax {
                    offset: 0,
                    message: format!("unknown rounding mode `{mode}`"),
                })
            }
        };
        start = colon + 1;
    }
    let mut p = Parser { src: text.as_bytes(), pos: start };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    // Constant subexpressions such as `1/0` are rejected up front.
    check_constants(&root)?;
    Ok(ScalingExpr {
        text: text.trim().to_string(),
        rounding,
        root,
    })
}

fn mentions_n(node: &Node) -> bool {
    match node {
        Node::Num(_) => false,
        Node::N => true,
        Node::Neg(a) | Node::Log { arg: a, .. } => mentions_n(a),
        Node::Bin { lhs, rhs, .. } => mentions_n(lhs) || mentions_n(rhs),
    }
}

fn check_constants(node: &Node) -> Result<(), ExprError> {
    if !mentions_n(node) {
        eval(node, 0.0)?;
        return Ok(());
    }
    match node {
        Node::Num(_) | Node::N => Ok(()),
        Node::Neg(a) | Node::Log { arg: a, .. } => check_constants(a),
        Node::Bin { op, lhs, rhs, offset } => {
            check_constants(lhs)?;
            check_constants(rhs)?;
            if *op == Op::Div && !mentions_n(rhs) && eval(rhs, 0.0)? == 0.0 {
                return Err(ExprError::DivisionByZero { offset: *offset });
            }
            Ok(())
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.pos,
            message: message.to_string(),
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

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let offset = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            let op = if c == b'+' { Op::Add } else { Op::Sub };
            lhs = Node::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), offset };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let offset = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            let op = if c == b'*' { Op::Mul } else { Op::Div };
            lhs = Node::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs), offset };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let offset = self.pos;
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Node::Bin { op: Op::Pow, lhs: Box::new(base), rhs: Box::new(exp), offset });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"n" => Ok(Node::N),
                    b"log" => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(Node::Log { arg: Box::new(arg), offset: start })
                    }
                    other => Err(ExprError::Syntax {
                        offset: start,
                        message: format!("unknown identifier `{}`", String::from_utf8_lossy(other)),
                    }),
                }
            }
            Some(_) => Err(self.error("expected a number, `n`, `log(` or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Node, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        // Optional exponent, e.g. 1e6 or 2.5E-3.
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            let digits = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>().map(Node::Num).map_err(|_| ExprError::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })
    }
}
