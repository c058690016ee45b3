//! A small expression language over counting sequences.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := comp (op comp)*        op is one of '.', '**', 'odot'; one kind per level
//! comp    := unary ('o' unary)*
//! unary   := 'int' '(' sum ')' postfix* | primary postfix*
//! primary := atom | '(' sum ')'
//! postfix := '\'' | 'ptg'
//! atom    := E | E+ | Eeven | Eodd | E[k] | X | L | C | Cat | Fub | integer
//! ```
//!
//! `.` is the species product, `**` convolution, `odot` the ordinal product and
//! `o` composition. `E+` is read as one atom unless an operand follows the `+`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::catalog;
use crate::series::{self, CountSeq, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    E,
    EPlus,
    EEven,
    EOdd,
    EExactly(usize),
    X,
    L,
    Cyc,
    Cat,
    Fub,
    Const(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Product,
    Convolution,
    Ordinal,
    Compose,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Derivative(Box<Expr>),
    Pointing(Box<Expr>),
    Integral(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => match a {
                Atom::E => f.write_str("E"),
                Atom::EPlus => f.write_str("E+"),
                Atom::EEven => f.write_str("Eeven"),
                Atom::EOdd => f.write_str("Eodd"),
                Atom::EExactly(k) => write!(f, "E[{k}]"),
                Atom::X => f.write_str("X"),
                Atom::L => f.write_str("L"),
                Atom::Cyc => f.write_str("C"),
                Atom::Cat => f.write_str("Cat"),
                Atom::Fub => f.write_str("Fub"),
                Atom::Const(c) => write!(f, "{c}"),
            },
            Expr::Binary(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Product => ".",
                    BinOp::Convolution => "**",
                    BinOp::Ordinal => "odot",
                    BinOp::Compose => "o",
                };
                write!(f, "({a} {sym} {b})")
            }
            Expr::Derivative(a) => write!(f, "{a}'"),
            Expr::Pointing(a) => write!(f, "{a} ptg"),
            Expr::Integral(a) => write!(f, "int({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(Atom),
    Plus,
    Minus,
    Dot,
    StarStar,
    Odot,
    O,
    Ptg,
    Int,
    Prime,
    LParen,
    RParen,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError::Parse { pos, msg: msg.into() })
}

fn word_at(chars: &[char], i: usize) -> String {
    chars[i..].iter().take_while(|c| c.is_ascii_alphabetic()).collect()
}

/// Whether an operand begins at or after `i` (skipping spaces).
fn operand_follows(chars: &[char], mut i: usize) -> bool {
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    match chars.get(i) {
        Some(c) if c.is_ascii_digit() || *c == '(' => true,
        Some(c) if c.is_ascii_alphabetic() => !matches!(word_at(chars, i).as_str(), "o" | "odot" | "ptg"),
        _ => false,
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let digits: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += digits.len();
            let v = digits.parse().or_else(|_| err(start, "integer too large"))?;
            out.push((start, Tok::Atom(Atom::Const(v))));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let word = word_at(&chars, i);
            i += word.len();
            let tok = match word.as_str() {
                "E" if chars.get(i) == Some(&'[') => {
                    let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
                    if digits.is_empty() || chars.get(i + 1 + digits.len()) != Some(&']') {
                        return err(i, "expected E[k] with a nonnegative integer k");
                    }
                    i += digits.len() + 2;
                    Tok::Atom(Atom::EExactly(digits.parse().or_else(|_| err(start, "k too large"))?))
                }
                "E" if chars.get(i) == Some(&'+') && !operand_follows(&chars, i + 1) => {
                    i += 1;
                    Tok::Atom(Atom::EPlus)
                }
                "E" => Tok::Atom(Atom::E),
                "Eeven" => Tok::Atom(Atom::EEven),
                "Eodd" => Tok::Atom(Atom::EOdd),
                "X" => Tok::Atom(Atom::X),
                "L" => Tok::Atom(Atom::L),
                "C" => Tok::Atom(Atom::Cyc),
                "Cat" => Tok::Atom(Atom::Cat),
                "Fub" => Tok::Atom(Atom::Fub),
                "o" => Tok::O,
                "odot" => Tok::Odot,
                "ptg" => Tok::Ptg,
                "int" => Tok::Int,
                _ => return err(start, format!("unknown name `{word}`")),
            };
            out.push((start, tok));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '.' => Tok::Dot,
            '*' if chars.get(i + 1) == Some(&'*') => {
                i += 1;
                Tok::StarStar
            }
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return err(start, format!("unexpected character `{c}`")),
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.at += 1;
            let rhs = self.product()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.comp()?;
        let mut level: Option<BinOp> = None;
        loop {
            let op = match self.peek() {
                Some(Tok::Dot) => BinOp::Product,
                Some(Tok::StarStar) => BinOp::Convolution,
                Some(Tok::Odot) => BinOp::Ordinal,
                _ => return Ok(lhs),
            };
            if level.is_some_and(|l| l != op) {
                return err(self.pos(), "mixing '.', '**' and 'odot' needs parentheses");
            }
            level = Some(op);
            self.at += 1;
            let rhs = self.comp()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn comp(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::O) {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(BinOp::Compose, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        let mut e = if self.peek() == Some(&Tok::Int) {
            self.at += 1;
            self.expect(Tok::LParen, "'(' after int")?;
            let inner = self.sum()?;
            self.expect(Tok::RParen, "')'")?;
            Expr::Integral(Box::new(inner))
        } else {
            self.primary()?
        };
        loop {
            match self.peek() {
                Some(Tok::Prime) => e = Expr::Derivative(Box::new(e)),
                Some(Tok::Ptg) => e = Expr::Pointing(Box::new(e)),
                _ => return Ok(e),
            }
            self.at += 1;
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Atom(a)) => Ok(Expr::Atom(a)),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => err(pos, "expected an operand"),
            None => err(pos, "unexpected end of expression"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.chars().count() };
    let e = p.sum()?;
    if p.at < p.toks.len() {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    fn derivatives(&self) -> usize {
        match self {
            Expr::Atom(_) => 0,
            Expr::Binary(_, a, b) => a.derivatives() + b.derivatives(),
            Expr::Derivative(a) => 1 + a.derivatives(),
            Expr::Pointing(a) | Expr::Integral(a) => a.derivatives(),
        }
    }

    fn eval_at(&self, order: usize) -> Result<CountSeq, ExprError> {
        Ok(match self {
            Expr::Atom(a) => match *a {
                Atom::E => series::e(order),
                Atom::EPlus => series::e_plus(order),
                Atom::EEven => series::e_even(order),
                Atom::EOdd => series::e_odd(order),
                Atom::EExactly(k) => series::e_exactly(k, order),
                Atom::X => series::x(order),
                Atom::L => series::l(order),
                Atom::Cyc => series::cyc(order),
                Atom::Cat => CountSeq::from_fn(order, catalog::catalan),
                Atom::Fub => catalog::fubini(order),
                Atom::Const(c) => series::one(order).scalar_mul(BigInt::from(c)),
            },
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval_at(order)?, b.eval_at(order)?);
                match op {
                    BinOp::Add => &a + &b,
                    BinOp::Sub => &a - &b,
                    BinOp::Product => a.species_product(&b),
                    BinOp::Convolution => a.convolution(&b),
                    BinOp::Ordinal => a.ordinal_product(&b),
                    BinOp::Compose => a.compose(&b)?,
                }
            }
            Expr::Derivative(a) => a.eval_at(order)?.derivative(),
            Expr::Pointing(a) => a.eval_at(order)?.pointing(),
            Expr::Integral(a) => a.eval_at(order)?.integral(),
        })
    }

    /// Coefficients `a_0..=a_order`.
    pub fn eval(&self, order: usize) -> Result<CountSeq, ExprError> {
        let full = self.eval_at(order + self.derivatives())?;
        Ok(full.truncate(order + 1))
    }
}

/// Parses and evaluates `src` to `a_0..=a_order`.
pub fn evaluate(src: &str, order: usize) -> Result<CountSeq, ExprError> {
    parse(src)?.eval(order)
}
