//! A small textual language for morphisms of `D_{ζ,n}`.
//!
//! ```text
//! expr    := scaled { ";" scaled }       ";" stacks vertically, left on top
//! scaled  := [ scalar "*" ] tens
//! tens    := atom { "#" atom }           "#" concatenates horizontally
//! atom    := "id(" nat ")" | "f" | "g" | "(" expr ")"
//! scalar  := rational [ "z^" int ] | "z^" int
//! ```
//!
//! `f` is the cap, `g` the cup, `z` denotes `θ`. `#` binds tighter than
//! `;` and both associate to the left. Whitespace is insignificant.
//! Well-typedness (composable arities) is checked at elaboration time, not
//! during parsing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cocycle::CocycleSpec;
use crate::cyclotomic::{CycScalar, RootPower};
use crate::diagram::{self, Atom, DiagramWord};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElaborateError {
    #[error("arity mismatch in `{context}`: codomain {cod} does not match domain {dom}")]
    ArityMismatch {
        context: String,
        cod: usize,
        dom: usize,
    },
}

/// A scalar literal `q·z^e` with `q` rational and `z = θ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarLit {
    #[serde(serialize_with = "ser_rational")]
    pub rational: BigRational,
    pub zpow: i64,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Abstract syntax of a morphism expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum MorphismExpr {
    Id {
        strands: usize,
    },
    Cap,
    Cup,
    Tensor {
        left: Box<MorphismExpr>,
        right: Box<MorphismExpr>,
    },
    Compose {
        top: Box<MorphismExpr>,
        bottom: Box<MorphismExpr>,
    },
    Scale {
        scalar: ScalarLit,
        expr: Box<MorphismExpr>,
    },
}

// Display renders back into the surface syntax, parenthesized only where
// the grammar requires it.
impl fmt::Display for MorphismExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismExpr::Id { strands } => write!(f, "id({strands})"),
            MorphismExpr::Cap => write!(f, "f"),
            MorphismExpr::Cup => write!(f, "g"),
            MorphismExpr::Tensor { left, right } => {
                write_sub(f, left, Prec::Tensor)?;
                write!(f, " # ")?;
                write_sub(f, right, Prec::Atom)
            }
            MorphismExpr::Compose { top, bottom } => {
                write_sub(f, top, Prec::Compose)?;
                write!(f, " ; ")?;
                write_sub(f, bottom, Prec::Tensor)
            }
            MorphismExpr::Scale { scalar, expr } => {
                let q = &scalar.rational;
                if scalar.zpow == 0 {
                    write!(f, "{q} * ")?;
                } else if q.is_one() {
                    write!(f, "z^{} * ", scalar.zpow)?;
                } else {
                    write!(f, "{q} z^{} * ", scalar.zpow)?;
                }
                write_sub(f, expr, Prec::Atom)
            }
        }
    }
}

#[derive(PartialEq, PartialOrd)]
enum Prec {
    Compose,
    Tensor,
    Atom,
}

fn prec_of(e: &MorphismExpr) -> Prec {
    match e {
        MorphismExpr::Compose { .. } => Prec::Compose,
        MorphismExpr::Tensor { .. } => Prec::Tensor,
        MorphismExpr::Scale { .. } => Prec::Tensor,
        _ => Prec::Atom,
    }
}

fn write_sub(f: &mut fmt::Formatter<'_>, e: &MorphismExpr, min: Prec) -> fmt::Result {
    if prec_of(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id,
    Cap,
    Cup,
    Z,
    Nat(BigInt),
    LParen,
    RParen,
    Semi,
    Hash,
    Star,
    Caret,
    Slash,
    Minus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Id => "id",
            Tok::Cap => "f",
            Tok::Cup => "g",
            Tok::Z => "z",
            Tok::Nat(n) => return write!(f, "{n}"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Semi => ";",
            Tok::Hash => "#",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Slash => "/",
            Tok::Minus => "-",
            Tok::Eof => "end of input",
        };
        write!(f, "{s}")
    }
}

struct Lexer {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                    bump(d, &mut line, &mut col);
                } else {
                    break;
                }
            }
            tokens.push((Tok::Nat(digits.parse().expect("digits")), tline, tcol));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    bump(d, &mut line, &mut col);
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "id" => Tok::Id,
                "f" => Tok::Cap,
                "g" => Tok::Cup,
                "z" => Tok::Z,
                _ => {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        message: format!("unknown token `{word}`"),
                    })
                }
            };
            tokens.push((tok, tline, tcol));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            '#' => Tok::Hash,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '-' => Tok::Minus,
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unknown token `{other}`"),
                })
            }
        };
        chars.next();
        bump(c, &mut line, &mut col);
        tokens.push((tok, tline, tcol));
    }
    tokens.push((Tok::Eof, line, col));
    Ok(Lexer { tokens, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.tokens[self.pos];
        (*l, *c)
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            let (line, col) = self.here();
            Err(ParseError {
                line,
                col,
                message: format!("expected `{want}`, found `{}`", self.peek()),
            })
        }
    }

    fn error(&self, message: String) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message }
    }
}

/// Parses a morphism expression. Total on valid strings; every invalid
/// input yields a positioned diagnostic, never a panic.
pub fn parse(src: &str) -> Result<MorphismExpr, ParseError> {
    let mut lx = lex(src)?;
    let expr = parse_expr(&mut lx)?;
    if *lx.peek() != Tok::Eof {
        return Err(lx.error(format!("unexpected `{}` after expression", lx.peek())));
    }
    Ok(expr)
}

fn parse_expr(lx: &mut Lexer) -> Result<MorphismExpr, ParseError> {
    let mut acc = parse_scaled(lx)?;
    while *lx.peek() == Tok::Semi {
        lx.next();
        let rhs = parse_scaled(lx)?;
        acc = MorphismExpr::Compose {
            top: Box::new(acc),
            bottom: Box::new(rhs),
        };
    }
    Ok(acc)
}

fn parse_scaled(lx: &mut Lexer) -> Result<MorphismExpr, ParseError> {
    let has_scalar = matches!(lx.peek(), Tok::Nat(_) | Tok::Minus | Tok::Z);
    if !has_scalar {
        return parse_tens(lx);
    }
    let scalar = parse_scalar(lx)?;
    lx.expect(Tok::Star)?;
    let inner = parse_tens(lx)?;
    Ok(MorphismExpr::Scale {
        scalar,
        expr: Box::new(inner),
    })
}

fn parse_scalar(lx: &mut Lexer) -> Result<ScalarLit, ParseError> {
    if *lx.peek() == Tok::Z {
        let zpow = parse_zpow(lx)?;
        return Ok(ScalarLit {
            rational: BigRational::one(),
            zpow,
        });
    }
    let rational = parse_rational(lx)?;
    let zpow = if *lx.peek() == Tok::Z {
        parse_zpow(lx)?
    } else {
        0
    };
    Ok(ScalarLit { rational, zpow })
}

fn parse_zpow(lx: &mut Lexer) -> Result<i64, ParseError> {
    lx.expect(Tok::Z)?;
    lx.expect(Tok::Caret)?;
    parse_int(lx)
}

fn parse_nat(lx: &mut Lexer) -> Result<BigInt, ParseError> {
    match lx.peek().clone() {
        Tok::Nat(n) => {
            lx.next();
            Ok(n)
        }
        other => Err(lx.error(format!("expected a number, found `{other}`"))),
    }
}

fn parse_int(lx: &mut Lexer) -> Result<i64, ParseError> {
    let negative = if *lx.peek() == Tok::Minus {
        lx.next();
        true
    } else {
        false
    };
    let n = parse_nat(lx)?;
    let n: i64 = n
        .try_into()
        .map_err(|_| lx.error("exponent out of range".to_string()))?;
    Ok(if negative { -n } else { n })
}

fn parse_rational(lx: &mut Lexer) -> Result<BigRational, ParseError> {
    let negative = if *lx.peek() == Tok::Minus {
        lx.next();
        true
    } else {
        false
    };
    let numer = parse_nat(lx)?;
    let denom = if *lx.peek() == Tok::Slash {
        lx.next();
        let d = parse_nat(lx)?;
        if d.is_zero() {
            return Err(lx.error("zero denominator".to_string()));
        }
        d
    } else {
        BigInt::one()
    };
    let q = BigRational::new(numer, denom);
    Ok(if negative { -q } else { q })
}

fn parse_tens(lx: &mut Lexer) -> Result<MorphismExpr, ParseError> {
    let mut acc = parse_atom(lx)?;
    while *lx.peek() == Tok::Hash {
        lx.next();
        let rhs = parse_atom(lx)?;
        acc = MorphismExpr::Tensor {
            left: Box::new(acc),
            right: Box::new(rhs),
        };
    }
    Ok(acc)
}

fn parse_atom(lx: &mut Lexer) -> Result<MorphismExpr, ParseError> {
    match lx.peek().clone() {
        Tok::Cap => {
            lx.next();
            Ok(MorphismExpr::Cap)
        }
        Tok::Cup => {
            lx.next();
            Ok(MorphismExpr::Cup)
        }
        Tok::Id => {
            lx.next();
            lx.expect(Tok::LParen)?;
            let n = parse_nat(lx)?;
            let strands: usize = n
                .try_into()
                .map_err(|_| lx.error("strand count out of range".to_string()))?;
            lx.expect(Tok::RParen)?;
            Ok(MorphismExpr::Id { strands })
        }
        Tok::LParen => {
            lx.next();
            let inner = parse_expr(lx)?;
            lx.expect(Tok::RParen)?;
            Ok(inner)
        }
        other => Err(lx.error(format!("expected a morphism atom, found `{other}`"))),
    }
}

/// Resolves arities against the context `(n, ζ)` and builds the word.
/// `f : n → 0`, `g : 0 → n`, and `z` denotes `θ`.
pub fn elaborate(expr: &MorphismExpr, spec: CocycleSpec) -> Result<DiagramWord, ElaborateError> {
    match expr {
        MorphismExpr::Id { strands } => Ok(DiagramWord::identity(spec, *strands)),
        MorphismExpr::Cap => Ok(DiagramWord::cap(spec)),
        MorphismExpr::Cup => Ok(DiagramWord::cup(spec)),
        MorphismExpr::Tensor { left, right } => {
            let l = elaborate(left, spec)?;
            let r = elaborate(right, spec)?;
            Ok(diagram::tensor(&l, &r).expect("same context by construction"))
        }
        MorphismExpr::Compose { top, bottom } => {
            let t = elaborate(top, spec)?;
            let b = elaborate(bottom, spec)?;
            diagram::compose(&t, &b).map_err(|_| ElaborateError::ArityMismatch {
                context: expr.to_string(),
                cod: t.cod(),
                dom: b.dom(),
            })
        }
        MorphismExpr::Scale { scalar, expr } => {
            let w = elaborate(expr, spec)?;
            let c = CycScalar::from_rational(spec.modulus(), scalar.rational.clone()).mul(
                &CycScalar::embed(RootPower::new(spec.modulus(), scalar.zpow)),
            );
            Ok(w.scale(&c))
        }
    }
}

fn print_scalar(q: &BigRational, e: usize) -> Option<String> {
    if q.is_one() && e == 0 {
        return None;
    }
    Some(if q.is_one() {
        format!("z^{e}")
    } else if e == 0 {
        format!("{q}")
    } else {
        format!("{q} z^{e}")
    })
}

/// Renders a word back into the surface syntax. Slices print top to
/// bottom joined by `;`, runs of identity strands merge into `id(k)`.
///
/// Scalars must be rational multiples of a power of `θ`; every word built
/// through the DSL or the rewriting engine has this form. Panics on a word
/// whose scalar is a genuine sum, which the grammar cannot express.
pub fn print(word: &DiagramWord) -> String {
    if word.is_zero() {
        let canonical = diagram::canonical_word(word.spec(), word.dom(), word.cod());
        return format!("0 * ({})", print(&canonical));
    }
    let body = if word.slices().is_empty() {
        format!("id({})", word.dom())
    } else {
        word.slices()
            .iter()
            .map(print_slice)
            .collect::<Vec<_>>()
            .join(" ; ")
    };
    let (q, e) = word
        .scalar()
        .expect("nonzero word")
        .as_root_monomial()
        .expect("word scalar must be a rational multiple of a power of theta");
    match print_scalar(&q, e) {
        None => body,
        Some(s) => format!("{s} * ({body})"),
    }
}

fn print_slice(slice: &crate::diagram::Slice) -> String {
    if slice.atoms.is_empty() {
        return "id(0)".to_string();
    }
    let mut parts = Vec::new();
    let mut run = 0usize;
    for atom in &slice.atoms {
        match atom {
            Atom::Strand => run += 1,
            other => {
                if run > 0 {
                    parts.push(format!("id({run})"));
                    run = 0;
                }
                parts.push(match other {
                    Atom::Cap => "f".to_string(),
                    Atom::Cup => "g".to_string(),
                    Atom::Strand => unreachable!(),
                });
            }
        }
    }
    if run > 0 {
        parts.push(format!("id({run})"));
    }
    parts.join(" # ")
}
