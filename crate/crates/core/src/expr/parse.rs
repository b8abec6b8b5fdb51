use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::BigRational;

use super::{canon, Expr, Func};
use crate::error::{Error, Result};
use crate::real::parse_decimal_rational;

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(BigRational),
    Sym(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, i64),
    Call(Func, Box<Node>),
}

/// A parsed expression over a fixed list of symbol names, instantiated by
/// substituting an [`Expr`] for each symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct Template {
    root: Node,
    symbols: Vec<String>,
}

impl Template {
    pub fn parse(text: &str, symbols: &[&str]) -> Result<Template> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, symbols };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(Template { root, symbols: symbols.iter().map(|s| s.to_string()).collect() })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// True when symbol `i` occurs in the template.
    pub fn uses(&self, i: usize) -> bool {
        fn walk(n: &Node, i: usize) -> bool {
            match n {
                Node::Num(_) => false,
                Node::Sym(j) => *j == i,
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => walk(a, i) || walk(b, i),
                Node::Neg(a) | Node::Pow(a, _) | Node::Call(_, a) => walk(a, i),
            }
        }
        walk(&self.root, i)
    }

    /// Substitutes `values[i]` for symbol `i`; the result is canonical.
    pub fn instantiate(&self, values: &[Expr]) -> Expr {
        assert_eq!(values.len(), self.symbols.len(), "one value per symbol");
        canon::canonicalize(&build(&self.root, values))
    }
}

fn build(n: &Node, v: &[Expr]) -> Expr {
    let b = |x: &Node| Box::new(build(x, v));
    match n {
        Node::Num(r) => Expr::Const(r.clone()),
        Node::Sym(i) => v[*i].clone(),
        Node::Add(a, c) => Expr::Add(alloc::vec![build(a, v), build(c, v)]),
        Node::Sub(a, c) => Expr::Add(alloc::vec![build(a, v), Expr::Neg(b(c))]),
        Node::Mul(a, c) => Expr::Mul(alloc::vec![build(a, v), build(c, v)]),
        Node::Div(a, c) => Expr::Div(b(a), b(c)),
        Node::Neg(a) => Expr::Neg(b(a)),
        Node::Pow(a, k) => Expr::Pow(b(a), *k),
        Node::Call(f, a) => Expr::Apply(*f, b(a)),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    symbols: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { offset: self.pos, message: msg.to_string() }
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

    fn expr(&mut self) -> Result<Node> {
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

    fn term(&mut self) -> Result<Node> {
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

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Node> {
        let base = self.base()?;
        if self.eat(b'^') {
            let k = self.signed_int()?;
            return Ok(Node::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else if self.eat(b'(') {
            let k = self.signed_int()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)` after exponent"));
            }
            return Ok(k);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("exponent must be an integer literal"));
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            return Err(self.error("exponent must be an integer literal"));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: i64 = text.parse().map_err(|_| Error::Syntax { offset: start, message: "exponent out of range".into() })?;
        Ok(if neg { -k } else { k })
    }

    fn base(&mut self) -> Result<Node> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<Node> {
        let start = self.pos;
        let mut dot = false;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_digit() {
                self.pos += 1;
            } else if c == b'.' && !dot {
                dot = true;
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        parse_decimal_rational(text)
            .map(Node::Num)
            .ok_or(Error::Syntax { offset: start, message: "malformed number".into() })
    }

    fn ident(&mut self) -> Result<Node> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if let Some(i) = self.symbols.iter().position(|s| *s == name) {
            return Ok(Node::Sym(i));
        }
        if let Some(f) = Func::from_name(name) {
            if !self.eat(b'(') {
                return Err(self.error("expected `(` after function name"));
            }
            let arg = self.expr()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(Node::Call(f, Box::new(arg)));
        }
        Err(Error::UnknownIdentifier { offset: start, name: name.to_string() })
    }
}
