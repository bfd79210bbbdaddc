//! Bracket-expression grammar.
//!
//! ```text
//! expr := term (("+" | "-") term)*
//! term := ("-")? (rational "*" term | atom)
//! atom := name | rational | "[" expr "," expr "]" | "(" expr ")"
//! ```
//!
//! Whitespace is insignificant. A bare rational is only meaningful as `0`.

use num_bigint::BigInt;
use thiserror::Error;

use super::element::LieElement;
use super::letter::Letter;
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Number(Q),
    Scale(Q, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("a nonzero number `{0}` is not a Lie element")]
    BareNumber(String),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !"[](),+-*=/#".contains(c)
}

impl<'a> Parser<'a> {
    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.chars().count(), |(i, _)| self.src[..*i].chars().count()) + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { col: self.col(), msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
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

    fn term(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let r = self.rational()?;
            if self.eat('*') {
                return Ok(Expr::Scale(r, Box::new(self.term()?)));
            }
            return Ok(Expr::Number(r));
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        Ok(s.parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<Q, ExprError> {
        let n = self.integer()?;
        if self.eat('/') {
            let d = self.integer()?;
            if d == BigInt::from(0) {
                return self.err("zero denominator");
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(c) if is_name_char(c) => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|(_, c)| is_name_char(*c)) {
                    self.pos += 1;
                }
                Ok(Expr::Name(self.chars[start..self.pos].iter().map(|(_, c)| c).collect()))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { chars: src.char_indices().collect(), pos: 0, src };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Evaluates with `lookup` resolving names to letters.
    pub fn eval<L: Letter>(&self, lookup: &impl Fn(&str) -> Option<L>) -> Result<LieElement<L, Q>, ExprError> {
        Ok(match self {
            Expr::Name(n) => LieElement::letter(lookup(n).ok_or_else(|| ExprError::UnknownName(n.clone()))?),
            Expr::Number(r) => {
                if *r != Q::from_integer(0.into()) {
                    return Err(ExprError::BareNumber(r.to_string()));
                }
                LieElement::zero()
            }
            Expr::Scale(r, e) => e.eval(lookup)?.scaled(r),
            Expr::Add(a, b) => a.eval(lookup)? + b.eval(lookup)?,
            Expr::Sub(a, b) => a.eval(lookup)? - b.eval(lookup)?,
            Expr::Neg(a) => -a.eval(lookup)?,
            Expr::Bracket(a, b) => a.eval(lookup)?.bracket(&b.eval(lookup)?),
        })
    }

    /// Names in order of first appearance.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Name(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Number(_) => {}
            Expr::Scale(_, e) | Expr::Neg(e) => e.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Bracket(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::letter::{Gen, GeneratorSet};
    use crate::scalar::{q, qr};

    fn set() -> GeneratorSet {
        GeneratorSet::new(&[("a", 1), ("b", 1), ("∂x", 2)]).unwrap()
    }

    fn ev(src: &str) -> Result<LieElement<Gen>, ExprError> {
        let s = set();
        parse_expr(src)?.eval(&|n| s.get(n).cloned())
    }

    #[test]
    fn parses_brackets_and_scalars() {
        let s = set();
        let a = LieElement::<Gen>::letter(s.gens()[0].clone());
        let b = LieElement::<Gen>::letter(s.gens()[1].clone());
        assert_eq!(ev("[b, a]").unwrap(), b.bracket(&a));
        assert!(!ev("3/2*[a,b] - a").unwrap().is_homogeneous());
        assert_eq!(ev("-2*[a,a] + [a,a]").unwrap(), a.bracket(&a).scaled(&q(-1)));
        assert_eq!(ev("1/2*[a,b]").unwrap(), a.bracket(&b).scaled(&qr(1, 2)));
        assert!(ev("0").unwrap().is_zero());
        assert!(ev("∂x").is_ok());
    }

    #[test]
    fn reports_errors() {
        assert_eq!(ev("[a,c]").unwrap_err(), ExprError::UnknownName("c".into()));
        assert!(matches!(ev("[a,b"), Err(ExprError::Syntax { .. })));
        assert!(matches!(ev("2"), Err(ExprError::BareNumber(_))));
        assert!(matches!(ev("a b"), Err(ExprError::Syntax { col: 3, .. })));
    }
}
