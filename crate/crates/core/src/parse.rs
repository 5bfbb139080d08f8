//! Text grammar for formulas. Whitespace insensitive; `F`/`G` are expanded to
//! their `U`/`W` encodings and arbitrary input negations are pushed down to
//! literals, so the parser always yields negation normal form.
//!
//! ```text
//! φ ::= "tt" | "ff" | ident | "!" φ | "(" φ ")" | UNOP φ | φ BINOP φ
//! UNOP ∈ {X, F, G, GF, FG, !}   BINOP ∈ {&, |, U, W, R, M}
//! precedence (high → low): UNOP; U/W/R/M (right-assoc); &; |
//! ```

use crate::formula::{Formula, Proposition};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    TrailingInput(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::TrailingInput(t) => {
                write!(f, "unknown operator or trailing input `{t}`")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    AndOp,
    OrOp,
    LParen,
    RParen,
    Next,
    Ev,
    Alw,
    GfOp,
    FgOp,
    Until,
    WeakUntil,
    Release,
    StrongRelease,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::True => "tt".into(),
            Tok::False => "ff".into(),
            Tok::Not => "!".into(),
            Tok::AndOp => "&".into(),
            Tok::OrOp => "|".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Next => "X".into(),
            Tok::Ev => "F".into(),
            Tok::Alw => "G".into(),
            Tok::GfOp => "GF".into(),
            Tok::FgOp => "FG".into(),
            Tok::Until => "U".into(),
            Tok::WeakUntil => "W".into(),
            Tok::Release => "R".into(),
            Tok::StrongRelease => "M".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::AndOp),
            '|' => Some(Tok::OrOp),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = tok {
            toks.push((i, t));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            let word = &text[start..i];
            let t = match word {
                "tt" => Tok::True,
                "ff" => Tok::False,
                "X" => Tok::Next,
                "F" => Tok::Ev,
                "G" => Tok::Alw,
                "GF" => Tok::GfOp,
                "FG" => Tok::FgOp,
                "U" => Tok::Until,
                "W" => Tok::WeakUntil,
                "R" => Tok::Release,
                "M" => Tok::StrongRelease,
                _ => Tok::Ident(String::from(word)),
            };
            toks.push((start, t));
            continue;
        }
        return Err(ParseError {
            pos: i,
            kind: ParseErrorKind::UnexpectedChar(c),
        });
    }
    Ok(toks)
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
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err(&self) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::UnexpectedToken(t.describe()),
            },
            None => ParseError {
                pos: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    // neg: a pending negation to push through the parsed subformula.
    fn or_level(&mut self, neg: bool) -> Result<Formula, ParseError> {
        let lhs = self.and_level(neg)?;
        if self.peek() != Some(&Tok::OrOp) {
            return Ok(lhs);
        }
        self.bump();
        let rhs = self.or_level(neg)?;
        Ok(if neg {
            Formula::and(lhs, rhs)
        } else {
            Formula::or(lhs, rhs)
        })
    }

    fn and_level(&mut self, neg: bool) -> Result<Formula, ParseError> {
        let lhs = self.temporal_level(neg)?;
        if self.peek() != Some(&Tok::AndOp) {
            return Ok(lhs);
        }
        self.bump();
        let rhs = self.and_level(neg)?;
        Ok(if neg {
            Formula::or(lhs, rhs)
        } else {
            Formula::and(lhs, rhs)
        })
    }

    fn temporal_level(&mut self, neg: bool) -> Result<Formula, ParseError> {
        let lhs = self.unary_level(neg)?;
        let op = match self.peek() {
            Some(Tok::Until) => Tok::Until,
            Some(Tok::WeakUntil) => Tok::WeakUntil,
            Some(Tok::Release) => Tok::Release,
            Some(Tok::StrongRelease) => Tok::StrongRelease,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.temporal_level(neg)?;
        // The dualities: !(φ U ψ) = !φ R !ψ, !(φ W ψ) = !φ M !ψ.
        Ok(match (op, neg) {
            (Tok::Until, false) => Formula::until(lhs, rhs),
            (Tok::Until, true) => Formula::release(lhs, rhs),
            (Tok::WeakUntil, false) => Formula::weak_until(lhs, rhs),
            (Tok::WeakUntil, true) => Formula::strong_release(lhs, rhs),
            (Tok::Release, false) => Formula::release(lhs, rhs),
            (Tok::Release, true) => Formula::until(lhs, rhs),
            (Tok::StrongRelease, false) => Formula::strong_release(lhs, rhs),
            (Tok::StrongRelease, true) => Formula::weak_until(lhs, rhs),
            _ => unreachable!(),
        })
    }

    fn unary_level(&mut self, neg: bool) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                self.unary_level(!neg)
            }
            Some(Tok::Next) => {
                self.bump();
                Ok(Formula::next(self.unary_level(neg)?))
            }
            Some(Tok::Ev) => {
                self.bump();
                let x = self.unary_level(neg)?;
                Ok(if neg {
                    Formula::always(x)
                } else {
                    Formula::eventually(x)
                })
            }
            Some(Tok::Alw) => {
                self.bump();
                let x = self.unary_level(neg)?;
                Ok(if neg {
                    Formula::eventually(x)
                } else {
                    Formula::always(x)
                })
            }
            Some(Tok::GfOp) => {
                self.bump();
                let x = self.unary_level(neg)?;
                Ok(if neg { Formula::fg(x) } else { Formula::gf(x) })
            }
            Some(Tok::FgOp) => {
                self.bump();
                let x = self.unary_level(neg)?;
                Ok(if neg { Formula::gf(x) } else { Formula::fg(x) })
            }
            Some(Tok::True) => {
                self.bump();
                Ok(if neg { Formula::ff() } else { Formula::tt() })
            }
            Some(Tok::False) => {
                self.bump();
                Ok(if neg { Formula::tt() } else { Formula::ff() })
            }
            Some(Tok::Ident(_)) => {
                let pos = self.pos();
                let Some(Tok::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                let prop = Proposition::new(&name).map_err(|_| ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedToken(name.clone()),
                })?;
                Ok(Formula::lit(prop, !neg))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.or_level(neg)?;
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.err())
                }
            }
            _ => Err(self.err()),
        }
    }
}

/// Parses `text` into a formula in negation normal form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.or_level(false)?;
    if let Some(t) = p.peek() {
        return Err(ParseError {
            pos: p.pos(),
            kind: ParseErrorKind::TrailingInput(t.describe()),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Node;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn negation_is_pushed_to_literals() {
        // !(a U b) = !a R !b
        let got = f("!(a U b)");
        let want = Formula::release(f("!a"), f("!b"));
        assert_eq!(got, want);
        assert_eq!(f("!(a & b)"), f("!a | !b"));
        assert_eq!(f("!X a"), f("X !a"));
        assert_eq!(f("!GF a"), f("FG !a"));
        assert_eq!(f("!F a"), f("G !a"));
        assert_eq!(f("!!a"), f("a"));
    }

    #[test]
    fn sugar_expansion() {
        let want = Formula::until(
            Formula::tt(),
            Formula::weak_until(f("a"), Formula::ff()),
        );
        assert_eq!(f("F G a"), want);
        assert!(matches!(f("GF a").node(), Node::Gf(_)));
    }

    #[test]
    fn limit_operators_parse_atomically() {
        let got = f("GF b & FG (a W b)");
        let want = Formula::and(
            Formula::gf(f("b")),
            Formula::fg(Formula::weak_until(f("a"), f("b"))),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(f("a U b U c"), Formula::until(f("a"), f("b U c")));
        assert_eq!(f("a & b | c"), Formula::or(f("a & b"), f("c")));
        assert_eq!(f("a U b & c"), Formula::and(f("a U b"), f("c")));
        assert_eq!(f("X a U b"), Formula::until(f("X a"), f("b")));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("a U").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = parse("a $ b").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse("a V b").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse("(a U b").is_err());
    }
}
