//! Lexer and parsers for the concrete text syntax.
//!
//! `.pi` files hold combinator terms; `--` starts a line comment. The
//! grammar, loosest to tightest binding:
//!
//! ```text
//! comb  ::= seq (":" type "<->" type)?
//! seq   ::= sum (";" seq)?
//! sum   ::= prod ("+" sum)?
//! prod  ::= unary ("*" prod)?
//! unary ::= "inv" unary | atom
//! atom  ::= primitive | "(" comb ")"
//! type  ::= tprod ("+" type)?
//! tprod ::= tatom ("*" tprod)?
//! tatom ::= "0" | "1" | "(" type ")"
//! value ::= "()" | "inl" value | "inr" value | "(" value "," value ")" | "(" value ")"
//! ```
//!
//! All binary operators parse right-associated; the printers in the AST
//! modules emit exactly this syntax back.

use crate::ast::{Comb, Prim, Primitive, QComb, QPrim, Term};
use crate::effects::{ArrowExpr, HideExpr};
use crate::error::ParseError;
use crate::types::ValueType;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(usize),
    Ident(String),
    Plus,
    Star,
    Semi,
    Colon,
    Comma,
    Iso,    // <->
    SeqOp,  // >>>
    ParOp,  // ***
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Iso => write!(f, "`<->`"),
            Tok::SeqOp => write!(f, "`>>>`"),
            Tok::ParOp => write!(f, "`***`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

fn lex(src: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = first_line;
    let mut col = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'-') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    return Err(err(tl, tc, "stray `-` (comments start with `--`)"));
                }
            }
            '(' => {
                bump!();
                toks.push(Spanned { tok: Tok::LParen, line: tl, col: tc });
            }
            ')' => {
                bump!();
                toks.push(Spanned { tok: Tok::RParen, line: tl, col: tc });
            }
            '[' => {
                bump!();
                toks.push(Spanned { tok: Tok::LBracket, line: tl, col: tc });
            }
            ']' => {
                bump!();
                toks.push(Spanned { tok: Tok::RBracket, line: tl, col: tc });
            }
            ';' => {
                bump!();
                toks.push(Spanned { tok: Tok::Semi, line: tl, col: tc });
            }
            ':' => {
                bump!();
                toks.push(Spanned { tok: Tok::Colon, line: tl, col: tc });
            }
            ',' => {
                bump!();
                toks.push(Spanned { tok: Tok::Comma, line: tl, col: tc });
            }
            '+' => {
                bump!();
                toks.push(Spanned { tok: Tok::Plus, line: tl, col: tc });
            }
            '*' => {
                bump!();
                if chars.peek() == Some(&'*') {
                    bump!();
                    if chars.peek() == Some(&'*') {
                        bump!();
                        toks.push(Spanned { tok: Tok::ParOp, line: tl, col: tc });
                    } else {
                        return Err(err(tl, tc, "`**` is not an operator (did you mean `*` or `***`?)"));
                    }
                } else {
                    toks.push(Spanned { tok: Tok::Star, line: tl, col: tc });
                }
            }
            '>' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    if chars.peek() == Some(&'>') {
                        bump!();
                        toks.push(Spanned { tok: Tok::SeqOp, line: tl, col: tc });
                    } else {
                        return Err(err(tl, tc, "expected `>>>`"));
                    }
                } else {
                    return Err(err(tl, tc, "expected `>>>`"));
                }
            }
            '<' => {
                bump!();
                if chars.peek() == Some(&'-') {
                    bump!();
                    if chars.peek() == Some(&'>') {
                        bump!();
                        toks.push(Spanned { tok: Tok::Iso, line: tl, col: tc });
                    } else {
                        return Err(err(tl, tc, "expected `<->`"));
                    }
                } else {
                    return Err(err(tl, tc, "expected `<->`"));
                }
            }
            '0'..='9' => {
                let mut n = 0usize;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n * 10 + v as usize;
                        bump!();
                    } else {
                        break;
                    }
                }
                toks.push(Spanned { tok: Tok::Num(n), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        word.push(d);
                        bump!();
                    } else {
                        break;
                    }
                }
                // the +-flavoured primitives carry the `+` (and a trailing
                // `l` for the unitors) inside the keyword
                if matches!(word.as_str(), "swap" | "assocr" | "assocl") && chars.peek() == Some(&'+') {
                    bump!();
                    word.push('+');
                } else if matches!(word.as_str(), "unite" | "uniti") && chars.peek() == Some(&'+') {
                    bump!();
                    if chars.peek() == Some(&'l') {
                        bump!();
                        word.push_str("+l");
                    } else {
                        return Err(err(tl, tc, format!("`{word}+` must be written `{word}+l`")));
                    }
                }
                toks.push(Spanned { tok: Tok::Ident(word), line: tl, col: tc });
            }
            c => return Err(err(tl, tc, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

fn prim_from_keyword(kw: &str) -> Option<Prim> {
    Prim::ALL.iter().copied().find(|p| p.keyword() == kw)
}

fn qprim_from_keyword(kw: &str) -> Option<QPrim> {
    match kw {
        "H" => Some(QPrim::Hadamard),
        "S" => Some(QPrim::PhaseS),
        "T" => Some(QPrim::PhaseT),
        _ => prim_from_keyword(kw).map(QPrim::Base),
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(toks: Vec<Spanned>) -> Parser {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |s| (s.line, s.col))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(got) if got == t => Ok(()),
            Some(got) => Err(err(l, c, format!("expected {t}, found {got}"))),
            None => Err(err(l, c, format!("expected {t}, found end of input"))),
        }
    }


    fn end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            let (l, c) = self.here();
            Err(err(l, c, format!("trailing input starting at {}", self.toks[self.pos].tok)))
        }
    }

    // ---- types ----

    fn ty(&mut self) -> Result<ValueType, ParseError> {
        let left = self.ty_prod()?;
        if self.eat(&Tok::Plus) {
            let right = self.ty()?;
            Ok(ValueType::sum(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_prod(&mut self) -> Result<ValueType, ParseError> {
        let left = self.ty_atom()?;
        if self.eat(&Tok::Star) {
            let right = self.ty_prod()?;
            Ok(ValueType::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_atom(&mut self) -> Result<ValueType, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Num(0)) => Ok(ValueType::Zero),
            Some(Tok::Num(1)) => Ok(ValueType::One),
            Some(Tok::Num(n)) => Err(err(l, c, format!("`{n}` is not a type; types are built from 0 and 1"))),
            Some(Tok::LParen) => {
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => Err(err(l, c, format!("expected a type, found {t}"))),
            None => Err(err(l, c, "expected a type, found end of input")),
        }
    }

    // ---- combinators ----

    fn comb<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        let body = self.comb_seq(kw)?;
        if self.eat(&Tok::Colon) {
            let dom = self.ty()?;
            self.expect(Tok::Iso)?;
            let cod = self.ty()?;
            Ok(Term::ascribe(body, dom, cod))
        } else {
            Ok(body)
        }
    }

    fn comb_seq<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        let left = self.comb_sum(kw)?;
        if self.eat(&Tok::Semi) {
            let right = self.comb_seq(kw)?;
            Ok(Term::seq(left, right))
        } else {
            Ok(left)
        }
    }

    fn comb_sum<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        let left = self.comb_prod(kw)?;
        if self.eat(&Tok::Plus) {
            let right = self.comb_sum(kw)?;
            Ok(Term::sum(left, right))
        } else {
            Ok(left)
        }
    }

    fn comb_prod<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        let left = self.comb_unary(kw)?;
        if self.eat(&Tok::Star) {
            let right = self.comb_prod(kw)?;
            Ok(Term::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn comb_unary<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == "inv") {
            self.bump();
            Ok(Term::inv(self.comb_unary(kw)?))
        } else {
            self.comb_atom(kw)
        }
    }

    fn comb_atom<P: Primitive>(&mut self, kw: fn(&str) -> Option<P>) -> Result<Term<P>, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Ident(w)) => match kw(&w) {
                Some(p) => Ok(Term::Prim(p)),
                None => Err(err(l, c, format!("unknown combinator `{w}`"))),
            },
            Some(Tok::LParen) => {
                let t = self.comb(kw)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => Err(err(l, c, format!("expected a combinator, found {t}"))),
            None => Err(err(l, c, "expected a combinator, found end of input")),
        }
    }

    // ---- values ----

    fn value(&mut self) -> Result<Value, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Ident(w)) if w == "inl" => Ok(Value::inl(self.value()?)),
            Some(Tok::Ident(w)) if w == "inr" => Ok(Value::inr(self.value()?)),
            Some(Tok::LParen) => {
                if self.eat(&Tok::RParen) {
                    return Ok(Value::Unit);
                }
                let first = self.value()?;
                if self.eat(&Tok::Comma) {
                    let second = self.value()?;
                    self.expect(Tok::RParen)?;
                    Ok(Value::pair(first, second))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            Some(t) => Err(err(l, c, format!("expected a value, found {t}"))),
            None => Err(err(l, c, "expected a value, found end of input")),
        }
    }

    // ---- arrow-layer expressions ----

    fn arrow(&mut self) -> Result<ArrowExpr, ParseError> {
        let left = self.arrow_par()?;
        if self.eat(&Tok::SeqOp) {
            let right = self.arrow()?;
            Ok(ArrowExpr::seq(left, right))
        } else {
            Ok(left)
        }
    }

    fn arrow_par(&mut self) -> Result<ArrowExpr, ParseError> {
        let left = self.arrow_atom()?;
        if self.eat(&Tok::ParOp) {
            let right = self.arrow_par()?;
            Ok(ArrowExpr::par(left, right))
        } else {
            Ok(left)
        }
    }

    fn arrow_atom(&mut self) -> Result<ArrowExpr, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Ident(w)) => match w.as_str() {
                "lift" => {
                    self.expect(Tok::LBracket)?;
                    let hidden = self.ty()?;
                    self.expect(Tok::RBracket)?;
                    let body = self.comb_atom(prim_from_keyword)?;
                    Ok(ArrowExpr::Lift(hidden, body))
                }
                "arr" => Ok(ArrowExpr::Arr(self.comb_atom(prim_from_keyword)?)),
                "alloc" => Ok(ArrowExpr::Alloc(self.ty_atom()?)),
                "clone" => Ok(ArrowExpr::Clone(self.ty_atom()?)),
                "inl" => Ok(ArrowExpr::Inl(self.ty_atom()?, self.ty_atom()?)),
                "inr" => Ok(ArrowExpr::Inr(self.ty_atom()?, self.ty_atom()?)),
                _ => Err(err(l, c, format!("unknown arrow term `{w}`"))),
            },
            Some(Tok::LParen) => {
                let t = self.arrow()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => Err(err(l, c, format!("expected an arrow term, found {t}"))),
            None => Err(err(l, c, "expected an arrow term, found end of input")),
        }
    }

    fn hide(&mut self) -> Result<HideExpr, ParseError> {
        let left = self.hide_par()?;
        if self.eat(&Tok::SeqOp) {
            let right = self.hide()?;
            Ok(HideExpr::seq(left, right))
        } else {
            Ok(left)
        }
    }

    fn hide_par(&mut self) -> Result<HideExpr, ParseError> {
        let left = self.hide_atom()?;
        if self.eat(&Tok::ParOp) {
            let right = self.hide_par()?;
            Ok(HideExpr::par(left, right))
        } else {
            Ok(left)
        }
    }

    fn hide_atom(&mut self) -> Result<HideExpr, ParseError> {
        let (l, c) = self.here();
        match self.bump() {
            Some(Tok::Ident(w)) => match w.as_str() {
                "lift" => {
                    self.expect(Tok::LBracket)?;
                    let garbage = self.ty()?;
                    self.expect(Tok::RBracket)?;
                    let body = self.arrow_atom()?;
                    Ok(HideExpr::Lift(garbage, body))
                }
                "arr" => Ok(HideExpr::Arr(self.arrow_atom()?)),
                "discard" => Ok(HideExpr::Discard(self.ty_atom()?)),
                "fst" => Ok(HideExpr::Fst(self.ty_atom()?, self.ty_atom()?)),
                "snd" => Ok(HideExpr::Snd(self.ty_atom()?, self.ty_atom()?)),
                _ => Err(err(l, c, format!("unknown hide-layer term `{w}`"))),
            },
            Some(Tok::LParen) => {
                let t = self.hide()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(t) => Err(err(l, c, format!("expected a hide-layer term, found {t}"))),
            None => Err(err(l, c, "expected a hide-layer term, found end of input")),
        }
    }
}

pub fn parse_comb(src: &str) -> Result<Comb, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let t = p.comb(prim_from_keyword)?;
    p.end()?;
    Ok(t)
}

pub fn parse_qcomb(src: &str) -> Result<QComb, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let t = p.comb(qprim_from_keyword)?;
    p.end()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<ValueType, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

/// Parse `b1 <-> b2`.
pub fn parse_comb_type(src: &str) -> Result<(ValueType, ValueType), ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let dom = p.ty()?;
    p.expect(Tok::Iso)?;
    let cod = p.ty()?;
    p.end()?;
    Ok((dom, cod))
}

pub fn parse_value(src: &str) -> Result<Value, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let v = p.value()?;
    p.end()?;
    Ok(v)
}

pub fn parse_arrow_expr(src: &str) -> Result<ArrowExpr, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let e = p.arrow()?;
    p.end()?;
    Ok(e)
}

pub fn parse_hide_expr(src: &str) -> Result<HideExpr, ParseError> {
    let mut p = Parser::new(lex(src, 1)?);
    let e = p.hide()?;
    p.end()?;
    Ok(e)
}

/// One stage of a channel pipeline file.
#[derive(Debug, Clone, PartialEq)]
pub enum StageSpec {
    Input(usize),
    Prepare(usize),
    Discard(usize),
    Unitary(QComb),
    Measure(ValueType),
}

/// Parse a channel pipeline: one stage per line, `--` comments allowed.
pub fn parse_pipeline(src: &str) -> Result<Vec<StageSpec>, ParseError> {
    let mut stages = Vec::new();
    for (i, raw_line) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw_line.find("--") {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(lex(line, lineno)?);
        let (l, c) = p.here();
        let stage = match p.bump() {
            Some(Tok::Ident(w)) => match w.as_str() {
                "input" | "prepare" | "discard" => {
                    let (nl, nc) = p.here();
                    let n = match p.bump() {
                        Some(Tok::Num(n)) => n,
                        _ => return Err(err(nl, nc, format!("`{w}` takes a dimension"))),
                    };
                    match w.as_str() {
                        "input" => StageSpec::Input(n),
                        "prepare" => StageSpec::Prepare(n),
                        _ => StageSpec::Discard(n),
                    }
                }
                "unitary" => StageSpec::Unitary(p.comb(qprim_from_keyword)?),
                "measure" => StageSpec::Measure(p.ty()?),
                _ => return Err(err(l, c, format!("unknown pipeline stage `{w}`"))),
            },
            _ => return Err(err(l, c, "expected a pipeline stage")),
        };
        p.end()?;
        stages.push(stage);
    }
    Ok(stages)
}
