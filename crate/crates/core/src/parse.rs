//! Text grammar for field elements and operators.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' sum ')'
//! ```
//!
//! Identifiers resolve to a variable, a generator, a caller binding, or a
//! derivation atom `D<var>`, in that order. Products compose left to right,
//! so `Dx*x` is `x*Dx + 1`. Division is only by functions.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{FieldTower, RationalExpr};
use crate::operator::{Lpdo, MultiIndex};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Syntax {
                        line: l0,
                        column: c0,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        column += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Named values visible to the parser besides the tower's symbols.
pub type Bindings = HashMap<String, Lpdo>;

struct Parser<'a> {
    tower: &'a Arc<FieldTower>,
    bindings: &'a Bindings,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn syntax(t: &Token, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn sum(&mut self) -> Result<Lpdo> {
        let mut acc = self.product()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.checked_add(&self.product()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.checked_sub(&self.product()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Lpdo> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = acc.compose(&self.unary()?)?;
                }
                Tok::Slash => {
                    let slash = self.bump();
                    let rhs = self.unary()?;
                    let f = rhs
                        .as_function()
                        .ok_or_else(|| Self::syntax(&slash, "division by an operator"))?;
                    if f.is_zero() {
                        return Err(Self::syntax(&slash, "division by zero"));
                    }
                    acc = acc.scale(&f.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Lpdo> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Lpdo> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let n = match t.tok.clone() {
            Tok::Int(n) => n,
            Tok::Minus => {
                return Err(Error::NegativeExponent {
                    line: t.line,
                    column: t.column,
                })
            }
            _ => return Err(Self::syntax(&t, "exponent must be an integer literal")),
        };
        let n: u32 = n
            .try_into()
            .map_err(|_| Self::syntax(&t, "exponent too large"))?;
        if let Some(f) = base.as_function() {
            return Ok(Lpdo::function(self.tower, f.pow(n)));
        }
        let mut acc = Lpdo::one(self.tower);
        for _ in 0..n {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Lpdo> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Lpdo::function(self.tower, RationalExpr::from_bigint(n))),
            Tok::Ident(ref name) => self.resolve(name, &t),
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::syntax(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(Self::syntax(&t, "unexpected end of input")),
            _ => Err(Self::syntax(&t, "expected a number, a name or `(`")),
        }
    }

    fn resolve(&self, name: &str, t: &Token) -> Result<Lpdo> {
        if let Some(i) = self.tower.symbol_index(name) {
            return Ok(Lpdo::function(self.tower, RationalExpr::symbol(i)));
        }
        if let Some(op) = self.bindings.get(name) {
            return Ok(op.clone());
        }
        if let Some(v) = name.strip_prefix('D') {
            if let Ok(i) = self.tower.var_index(v) {
                return Ok(Lpdo::d(self.tower, i));
            }
        }
        Err(Error::UnknownSymbol {
            name: name.to_string(),
            line: t.line,
            column: t.column,
        })
    }
}

/// Parses an operator with extra named bindings in scope.
pub fn parse_operator_with(text: &str, tower: &Arc<FieldTower>, bindings: &Bindings) -> Result<Lpdo> {
    let mut p = Parser {
        tower,
        bindings,
        toks: lex(text)?,
        pos: 0,
    };
    let op = p.sum()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(Parser::syntax(t, "unexpected trailing input"));
    }
    Ok(op)
}

pub fn parse_operator(text: &str, tower: &Arc<FieldTower>) -> Result<Lpdo> {
    parse_operator_with(text, tower, &Bindings::new())
}

/// Parses a field element; derivations are rejected.
pub fn parse_expr_with(text: &str, tower: &Arc<FieldTower>, bindings: &Bindings) -> Result<RationalExpr> {
    let op = parse_operator_with(text, tower, bindings)?;
    op.as_function()
        .ok_or_else(|| Error::ExpectedFunction(op.order().unwrap_or(0)))
}

pub fn parse_expr(text: &str, tower: &Arc<FieldTower>) -> Result<RationalExpr> {
    parse_expr_with(text, tower, &Bindings::new())
}

/// Reads the JSON operator form written by [`crate::format::operator_to_json`].
pub fn operator_from_json(value: &Value, tower: &Arc<FieldTower>) -> Result<Lpdo> {
    let bad = |m: &str| Error::Syntax {
        line: 1,
        column: 1,
        message: format!("operator JSON: {m}"),
    };
    let terms = value.as_array().ok_or_else(|| bad("expected an array"))?;
    let mut op = Lpdo::zero(tower);
    for term in terms {
        let index = term
            .get("index")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("term without an `index` object"))?;
        let coeff = term
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term without a `coeff` string"))?;
        let mut idx = MultiIndex::zero();
        for (var, e) in index {
            let i = tower.var_index(var)?;
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad("exponent must be a non-negative integer"))?;
            idx = idx.add(&MultiIndex::var_pow(i, e));
        }
        op = op.checked_add(&Lpdo::monomial(tower, idx, parse_expr(coeff, tower)?))?;
    }
    Ok(op)
}
