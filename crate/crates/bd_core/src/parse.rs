//! Grammar:
//!
//! ```text
//! formula := term ('|' term)*
//! term    := factor ('&' factor)*
//! factor  := '-' factor | atom | '(' formula ')'
//! atom    := IDENT | 'T' | 'F'
//! ```
//!
//! The Unicode forms `¬ ∧ ∨ ⊤ ⊥` are accepted too.

use crate::{BdError, Formula, Signature};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, BdError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '-' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "T" => Tok::Top,
                    "F" => Tok::Bot,
                    _ => Tok::Ident(word),
                };
                out.push((start, tok));
                continue;
            }
            other => return Err(BdError::Syntax { pos: i, msg: format!("unexpected character `{other}`") }),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    sig: &'a Signature,
    with_constants: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn formula(&mut self) -> Result<Formula, BdError> {
        let mut f = self.term()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            f = f.or(self.term()?);
        }
        Ok(f)
    }

    fn term(&mut self) -> Result<Formula, BdError> {
        let mut f = self.factor()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            f = f.and(self.factor()?);
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Formula, BdError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return Err(BdError::Syntax { pos, msg: "unexpected end of input".into() });
        };
        self.at += 1;
        match tok {
            Tok::Not => Ok(self.factor()?.not()),
            Tok::LParen => {
                let f = self.formula()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(BdError::Syntax { pos: self.pos(), msg: "expected `)`".into() });
                }
                self.at += 1;
                Ok(f)
            }
            Tok::Top | Tok::Bot if !self.with_constants => Err(BdError::ConstantNotAllowed { pos }),
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Ident(name) => match self.sig.index(&name) {
                Some(v) => Ok(Formula::Var(v)),
                None => Err(BdError::UnknownVariable { name, pos }),
            },
            other => Err(BdError::Syntax { pos, msg: format!("unexpected token {other:?}") }),
        }
    }
}

/// Parses an inner formula over `sig`. Constants `T`/`F` are rejected unless
/// `with_constants` is set.
pub fn parse_bd(text: &str, sig: &Signature, with_constants: bool) -> Result<Formula, BdError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count(), sig, with_constants };
    let f = p.formula()?;
    if p.at != p.toks.len() {
        return Err(BdError::Syntax { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(f)
}
