//! Surface syntax for propositional and modal formulas.
//!
//! ```text
//! atom     [a-z][a-z0-9_]*        (except `bot`, `top`, `box`)
//! consts   bot  top
//! unary    ~f
//! binary   f & g   f | g   f -> g
//! modal    box(<propositional formula>)
//! ```
//!
//! Precedence from tightest: `~`, `&`, `|`, `->`. `&` and `|` associate to
//! the left, `->` to the right. The printer emits the fewest parentheses
//! that parse back to the same tree.

use std::fmt;

use thiserror::Error;

use crate::logic::LFormula;
use crate::modal::MFormula;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}\n  {excerpt}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub excerpt: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    /// `□`, the prefix form of `box(..)`.
    BoxOp,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::BoxOp => f.write_str("`□`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let mut chars = input.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            let tok = match c {
                c if c.is_whitespace() => continue,
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Arrow,
                '-' if chars.peek().map(|&(_, c)| c) == Some('>') => {
                    chars.next();
                    Tok::Arrow
                }
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '□' => Tok::BoxOp,
                '⊥' => Tok::Ident("bot".to_string()),
                '⊤' => Tok::Ident("top".to_string()),
                'a'..='z' => {
                    let mut end = start + 1;
                    while let Some(&(i, c)) = chars.peek() {
                        if !matches!(c, 'a'..='z' | '0'..='9' | '_') {
                            break;
                        }
                        end = i + 1;
                        chars.next();
                    }
                    Tok::Ident(input[start..end].to_string())
                }
                _ => {
                    return Err(error_at(
                        input,
                        start,
                        "an atom, `bot`, `top`, `~`, `(`, or a connective",
                    ))
                }
            };
            toks.push((tok, start));
        }
        toks.push((Tok::Eof, input.len()));
        Ok(Parser {
            input,
            toks,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(error_at(
            self.input,
            self.offset(),
            &format!("{expected}, found {}", self.peek()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&tok.to_string())
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail("a connective or end of input")
        }
    }
}

fn error_at(input: &str, offset: usize, expected: &str) -> ParseError {
    // Clamp to the last character so the position always lies inside the input.
    let mut offset = offset.min(input.len().saturating_sub(1));
    while !input.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &input[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |p| p + 1);
    let column = before[line_start..].chars().count() + 1;
    let line_end = input[line_start..]
        .find('\n')
        .map_or(input.len(), |p| line_start + p);
    let text = &input[line_start..line_end];
    ParseError {
        line,
        column,
        expected: expected.to_string(),
        excerpt: format!("{text}\n  {}^", " ".repeat(column - 1)),
    }
}

/// Connective structure shared by both formula levels.
trait Grammar: Sized {
    fn primary(p: &mut Parser<'_>) -> Result<Self, ParseError>;
    fn not(f: Self) -> Self;
    fn and(l: Self, r: Self) -> Self;
    fn or(l: Self, r: Self) -> Self;
    fn implies(l: Self, r: Self) -> Self;

    fn implication(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let lhs = Self::disjunction(p)?;
        if *p.peek() == Tok::Arrow {
            p.bump();
            let rhs = Self::implication(p)?;
            return Ok(Self::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let mut acc = Self::conjunction(p)?;
        while *p.peek() == Tok::Or {
            p.bump();
            acc = Self::or(acc, Self::conjunction(p)?);
        }
        Ok(acc)
    }

    fn conjunction(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let mut acc = Self::unary(p)?;
        while *p.peek() == Tok::And {
            p.bump();
            acc = Self::and(acc, Self::unary(p)?);
        }
        Ok(acc)
    }

    fn unary(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        if *p.peek() == Tok::Not {
            p.bump();
            return Ok(Self::not(Self::unary(p)?));
        }
        Self::primary(p)
    }
}

/// Propositional formulas appearing inside `box(...)`.
struct Inner(LFormula);

/// Propositional formulas at top level.
struct Plain(LFormula);

fn l_primary(p: &mut Parser<'_>, nested: bool) -> Result<LFormula, ParseError> {
    match p.peek().clone() {
        Tok::Ident(name) => match name.as_str() {
            "bot" => {
                p.bump();
                Ok(LFormula::Bottom)
            }
            "top" => {
                p.bump();
                Ok(LFormula::Top)
            }
            "box" if nested => p.fail("a propositional formula (nested modality is not allowed)"),
            "box" => p.fail("a propositional formula (`box` is only allowed in modal formulas)"),
            _ => {
                p.bump();
                Ok(LFormula::atom(name))
            }
        },
        Tok::LParen => {
            p.bump();
            let f = if nested {
                Inner::implication(p)?.0
            } else {
                Plain::implication(p)?.0
            };
            p.expect(Tok::RParen)?;
            Ok(f)
        }
        Tok::BoxOp if nested => p.fail("a propositional formula (nested modality is not allowed)"),
        Tok::BoxOp => p.fail("a propositional formula (`box` is only allowed in modal formulas)"),
        _ => p.fail("an atom, `bot`, `top`, `~` or `(`"),
    }
}

macro_rules! propositional_grammar {
    ($ty:ident, $nested:expr) => {
        impl Grammar for $ty {
            fn primary(p: &mut Parser<'_>) -> Result<Self, ParseError> {
                l_primary(p, $nested).map($ty)
            }
            fn not(f: Self) -> Self {
                $ty(f.0.not())
            }
            fn and(l: Self, r: Self) -> Self {
                $ty(l.0.and(r.0))
            }
            fn or(l: Self, r: Self) -> Self {
                $ty(l.0.or(r.0))
            }
            fn implies(l: Self, r: Self) -> Self {
                $ty(l.0.implies(r.0))
            }
        }
    };
}

propositional_grammar!(Inner, true);
propositional_grammar!(Plain, false);

impl Grammar for MFormula {
    fn primary(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        match p.peek().clone() {
            Tok::Ident(name) => match name.as_str() {
                "bot" => {
                    p.bump();
                    Ok(MFormula::Bottom)
                }
                "top" => {
                    p.bump();
                    Ok(MFormula::Top)
                }
                "box" => {
                    p.bump();
                    p.expect(Tok::LParen)?;
                    let inner = Inner::implication(p)?.0;
                    p.expect(Tok::RParen)?;
                    Ok(MFormula::Box(inner))
                }
                _ => p.fail("`box(...)`, `bot`, `top`, `~` or `(` in a modal formula"),
            },
            Tok::BoxOp => {
                p.bump();
                Ok(MFormula::Box(Inner::unary(p)?.0))
            }
            Tok::LParen => {
                p.bump();
                let f = MFormula::implication(p)?;
                p.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => p.fail("`box(...)`, `bot`, `top`, `~` or `(`"),
        }
    }
    fn not(f: Self) -> Self {
        f.not()
    }
    fn and(l: Self, r: Self) -> Self {
        l.and(r)
    }
    fn or(l: Self, r: Self) -> Self {
        l.or(r)
    }
    fn implies(l: Self, r: Self) -> Self {
        l.implies(r)
    }
}

pub fn parse_l(text: &str) -> Result<LFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = Plain::implication(&mut p)?.0;
    p.finish()?;
    Ok(f)
}

pub fn parse_m(text: &str) -> Result<MFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = MFormula::implication(&mut p)?;
    p.finish()?;
    Ok(f)
}

/// Output style of the printer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Style {
    pub unicode: bool,
    /// Omit the spaces around binary connectives.
    pub compact: bool,
}

impl Style {
    pub const ASCII: Style = Style {
        unicode: false,
        compact: false,
    };
    pub const UNICODE: Style = Style {
        unicode: true,
        compact: false,
    };
    pub const COMPACT: Style = Style {
        unicode: false,
        compact: true,
    };

    fn token(self, ascii: &'static str, unicode: &'static str) -> &'static str {
        if self.unicode {
            unicode
        } else {
            ascii
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Implies = 1,
    Or = 2,
    And = 3,
    Unary = 4,
}

fn binary(
    out: &mut String,
    style: Style,
    ctx: Prec,
    own: Prec,
    op: &str,
    left: impl FnOnce(&mut String, Prec),
    right: impl FnOnce(&mut String, Prec),
) {
    let wrap = ctx > own;
    if wrap {
        out.push('(');
    }
    // Right-associative `->` needs parentheses on the left; the
    // left-associative `&` and `|` on the right.
    let (lp, rp) = match own {
        Prec::Implies => (Prec::Or, Prec::Implies),
        Prec::Or => (Prec::Or, Prec::And),
        Prec::And => (Prec::And, Prec::Unary),
        Prec::Unary => unreachable!("not a binary connective"),
    };
    left(out, lp);
    if style.compact {
        out.push_str(op);
    } else {
        out.push(' ');
        out.push_str(op);
        out.push(' ');
    }
    right(out, rp);
    if wrap {
        out.push(')');
    }
}

fn write_l(out: &mut String, f: &LFormula, style: Style, ctx: Prec) {
    match f {
        LFormula::Atom(a) => out.push_str(a.name()),
        LFormula::Bottom => out.push_str(style.token("bot", "⊥")),
        LFormula::Top => out.push_str(style.token("top", "⊤")),
        LFormula::Not(g) => {
            out.push_str(style.token("~", "¬"));
            write_l(out, g, style, Prec::Unary);
        }
        LFormula::And(l, r) => binary(
            out,
            style,
            ctx,
            Prec::And,
            style.token("&", "∧"),
            |o, p| write_l(o, l, style, p),
            |o, p| write_l(o, r, style, p),
        ),
        LFormula::Or(l, r) => binary(
            out,
            style,
            ctx,
            Prec::Or,
            style.token("|", "∨"),
            |o, p| write_l(o, l, style, p),
            |o, p| write_l(o, r, style, p),
        ),
        LFormula::Implies(l, r) => binary(
            out,
            style,
            ctx,
            Prec::Implies,
            style.token("->", "→"),
            |o, p| write_l(o, l, style, p),
            |o, p| write_l(o, r, style, p),
        ),
    }
}

fn write_m(out: &mut String, f: &MFormula, style: Style, ctx: Prec) {
    match f {
        MFormula::Box(inner) => {
            if style.unicode {
                out.push('□');
                write_l(out, inner, style, Prec::Unary);
            } else {
                out.push_str("box(");
                write_l(out, inner, style, Prec::Implies);
                out.push(')');
            }
        }
        MFormula::Bottom => out.push_str(style.token("bot", "⊥")),
        MFormula::Top => out.push_str(style.token("top", "⊤")),
        MFormula::Not(g) => {
            out.push_str(style.token("~", "¬"));
            write_m(out, g, style, Prec::Unary);
        }
        MFormula::And(l, r) => binary(
            out,
            style,
            ctx,
            Prec::And,
            style.token("&", "∧"),
            |o, p| write_m(o, l, style, p),
            |o, p| write_m(o, r, style, p),
        ),
        MFormula::Or(l, r) => binary(
            out,
            style,
            ctx,
            Prec::Or,
            style.token("|", "∨"),
            |o, p| write_m(o, l, style, p),
            |o, p| write_m(o, r, style, p),
        ),
        MFormula::Implies(l, r) => binary(
            out,
            style,
            ctx,
            Prec::Implies,
            style.token("->", "→"),
            |o, p| write_m(o, l, style, p),
            |o, p| write_m(o, r, style, p),
        ),
    }
}

/// Anything the printer can render.
pub trait Render {
    fn render(&self, style: Style) -> String;
}

impl Render for LFormula {
    fn render(&self, style: Style) -> String {
        let mut out = String::new();
        write_l(&mut out, self, style, Prec::Implies);
        out
    }
}

impl Render for MFormula {
    fn render(&self, style: Style) -> String {
        let mut out = String::new();
        write_m(&mut out, self, style, Prec::Implies);
        out
    }
}

/// Space-free ASCII rendering, used in machine-readable report lines.
pub fn compact(f: &impl Render) -> String {
    f.render(Style::COMPACT)
}

impl fmt::Display for LFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::ASCII))
    }
}

impl fmt::Display for MFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::ASCII))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(name: &str) -> LFormula {
        LFormula::atom(name)
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_l("a -> b | ~c").unwrap(),
            l("a").implies(l("b").or(l("c").not()))
        );
        assert_eq!(parse_l("bot").unwrap(), LFormula::Bottom);
        assert_eq!(
            parse_l("a -> b -> c").unwrap(),
            l("a").implies(l("b").implies(l("c")))
        );
        assert_eq!(
            parse_l("a & b | c & d").unwrap(),
            l("a").and(l("b")).or(l("c").and(l("d")))
        );
        assert_eq!(parse_l("a | b | c").unwrap(), l("a").or(l("b")).or(l("c")));
        assert_eq!(parse_l("~~a").unwrap(), l("a").not().not());
    }

    #[test]
    fn modal_formulas() {
        let (a, c) = (l("a"), l("c"));
        let expected = MFormula::Box(c.clone().implies(a.clone()))
            .implies(MFormula::Box(c.not()).or(MFormula::Box(a)));
        assert_eq!(
            parse_m("box(c -> a) -> (box(~c) | box(a))").unwrap(),
            expected
        );
        assert_eq!(parse_m("top").unwrap(), MFormula::Top);
        let err = parse_m("box(box(a))").unwrap_err();
        assert!(err.expected.contains("nested modality"), "{err}");
        assert_eq!((err.line, err.column), (1, 5));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_l("a & )").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse_l("a &").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
        let err = parse_l("A").unwrap_err();
        assert_eq!(err.column, 1);
        assert!(parse_l("").is_err());
        assert!(parse_l("a b").is_err());
        assert!(parse_l("box(a)").is_err());
        assert!(parse_m("a").is_err());
        assert!(parse_m("box(a").is_err());
    }

    #[test]
    fn minimal_parentheses() {
        let f = parse_l("(a -> b) -> (c | d) & ~(e & f)").unwrap();
        assert_eq!(f.to_string(), "(a -> b) -> (c | d) & ~(e & f)");
        let f = parse_l("a | (b | c)").unwrap();
        assert_eq!(f.to_string(), "a | (b | c)");
        let f = parse_m("~box(a) & (box(b) -> bot)").unwrap();
        assert_eq!(f.to_string(), "~box(a) & (box(b) -> bot)");
        assert_eq!(compact(&f), "~box(a)&(box(b)->bot)");
    }

    #[test]
    fn unicode_rendering() {
        let f = parse_m("box(c -> a) -> box(~c) | box(a)").unwrap();
        assert_eq!(f.render(Style::UNICODE), "□(c → a) → □¬c ∨ □a");
    }

    #[test]
    fn unicode_input() {
        let f = parse_m("□(c → a) → □¬c ∨ □a").unwrap();
        assert_eq!(f, parse_m("box(c -> a) -> box(~c) | box(a)").unwrap());
        assert_eq!(
            parse_l("a ∧ ⊤ → ⊥").unwrap(),
            parse_l("a & top -> bot").unwrap()
        );
        assert!(parse_m("□□a")
            .unwrap_err()
            .expected
            .contains("nested modality"));
    }
}
