//! Grammar:
//!
//! ```text
//! combo   := disj ('->' combo)?
//! disj    := conj ('or' conj)*
//! conj    := unary ('and' unary)*
//! unary   := 'not' unary | '(' combo ')' | atom
//! atom    := sum REL sum                      REL in >= > = <= <
//! sum     := ['+' | '-'] summand (('+' | '-') summand)*
//! summand := INT ['*'] term | INT | term
//! term    := ('w+' | 'w-' | 'b+' | 'b-') ('[' formula ']' | '(' formula ')')
//! ```
//!
//! Both sides of an atom may mix terms and integer constants; everything is
//! moved to the left with the constants collected into the bound.

use bd_core::{parse_bd, BdError, Signature};
use ratlp::Rel;

use crate::ast::{Atom, AtomKind, Combo, Polarity, Term};
use crate::IneqError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Star,
    Plus,
    Minus,
    Rel(Rel),
    Term { kind: AtomKind, polarity: Polarity, body: String, body_pos: usize },
    And,
    Or,
    Not,
    Arrow,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> IneqError {
    IneqError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, IneqError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let peek = |k: usize| chars.get(i + k).copied();
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            'w' | 'b' if matches!(peek(1), Some('+' | '-')) && matches!(peek(2), Some('[' | '(')) => {
                let kind = if c == 'w' { AtomKind::Weight } else { AtomKind::Belief };
                let polarity = if peek(1) == Some('+') { Polarity::Plus } else { Polarity::Minus };
                let open = chars[i + 2];
                let close = if open == '[' { ']' } else { ')' };
                let mut depth = 0usize;
                let mut j = i + 2;
                loop {
                    match chars.get(j) {
                        None => return Err(syntax(i + 2, format!("unclosed `{open}`"))),
                        Some(&ch) if ch == open => depth += 1,
                        Some(&ch) if ch == close => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                let body = chars[i + 3..j].iter().collect();
                i = j + 1;
                out.push((start, Tok::Term { kind, polarity, body, body_pos: start + 3 }));
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let v = digits.parse().map_err(|_| syntax(start, "integer out of range"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    _ => return Err(syntax(start, format!("unexpected word `{word}`"))),
                };
                out.push((start, tok));
                continue;
            }
            '-' if peek(1) == Some('>') => {
                i += 2;
                out.push((start, Tok::Arrow));
                continue;
            }
            '>' | '<' if peek(1) == Some('=') => {
                i += 2;
                out.push((start, Tok::Rel(if c == '>' { Rel::Ge } else { Rel::Le })));
                continue;
            }
            '>' => Tok::Rel(Rel::Gt),
            '<' => Tok::Rel(Rel::Lt),
            '=' => Tok::Rel(Rel::Eq),
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(i, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
}

/// One side of an atom: terms plus an integer constant.
#[derive(Default)]
struct Sum {
    terms: Vec<Term>,
    kind: Option<(AtomKind, usize)>,
    constant: i64,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn combo(&mut self) -> Result<Combo, IneqError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            return Ok(lhs.implies(self.combo()?));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Combo, IneqError> {
        let mut acc = self.conj()?;
        while self.eat(&Tok::Or) {
            acc = acc.or(self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Combo, IneqError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = acc.and(self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Combo, IneqError> {
        if self.eat(&Tok::Not) {
            return Ok(self.unary()?.not());
        }
        if self.eat(&Tok::LParen) {
            let inner = self.combo()?;
            if !self.eat(&Tok::RParen) {
                return Err(syntax(self.here(), "expected `)`"));
            }
            return Ok(inner);
        }
        self.atom().map(Combo::Atom)
    }

    fn atom(&mut self) -> Result<Atom, IneqError> {
        let start = self.here();
        let lhs = self.sum()?;
        let rel = match self.peek() {
            Some(Tok::Rel(r)) => *r,
            _ => return Err(syntax(self.here(), "expected a relation")),
        };
        self.pos += 1;
        let rhs = self.sum()?;
        let kind = match (lhs.kind, rhs.kind) {
            (Some((a, _)), Some((b, _))) if a != b => return Err(IneqError::MixedKinds),
            (Some((a, _)), _) | (_, Some((a, _))) => a,
            (None, None) => return Err(syntax(start, "atom has no weight or belief term")),
        };
        let mut terms = lhs.terms;
        terms.extend(rhs.terms.into_iter().map(|t| Term { coeff: -t.coeff, ..t }));
        let bound = rhs.constant.checked_sub(lhs.constant).ok_or_else(|| syntax(start, "constant out of range"))?;
        Ok(Atom { kind, terms, rel, bound })
    }

    fn sum(&mut self) -> Result<Sum, IneqError> {
        let mut s = Sum::default();
        let mut sign = 1i64;
        if self.eat(&Tok::Minus) {
            sign = -1;
        } else {
            self.eat(&Tok::Plus);
        }
        loop {
            self.summand(sign, &mut s)?;
            if self.eat(&Tok::Plus) {
                sign = 1;
            } else if self.eat(&Tok::Minus) {
                sign = -1;
            } else {
                return Ok(s);
            }
        }
    }

    fn summand(&mut self, sign: i64, s: &mut Sum) -> Result<(), IneqError> {
        let pos = self.here();
        let mut coeff = 1i64;
        let mut has_int = false;
        if let Some(Tok::Int(v)) = self.peek() {
            coeff = *v;
            has_int = true;
            self.pos += 1;
            self.eat(&Tok::Star);
        }
        let coeff = coeff * sign;
        match self.peek().cloned() {
            Some(Tok::Term { kind, polarity, body, body_pos }) => {
                self.pos += 1;
                if let Some((k, _)) = s.kind {
                    if k != kind {
                        return Err(IneqError::MixedKinds);
                    }
                }
                s.kind = Some((kind, pos));
                let formula = parse_bd(&body, self.sig, true).map_err(|e| shift(e, body_pos))?;
                s.terms.push(Term { coeff, polarity, formula });
                Ok(())
            }
            _ if has_int => {
                s.constant += coeff;
                Ok(())
            }
            _ => Err(syntax(pos, "expected an integer or a w±/b± term")),
        }
    }
}

fn shift(e: BdError, offset: usize) -> IneqError {
    let pos = match &e {
        BdError::Syntax { pos, .. } | BdError::UnknownVariable { pos, .. } | BdError::ConstantNotAllowed { pos } => {
            offset + pos
        }
        _ => offset,
    };
    IneqError::Formula { pos, source: e }
}

/// Parses a Boolean combination of atoms whose formulas use `sig`.
pub fn parse_combo(text: &str, sig: &Signature) -> Result<Combo, IneqError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { toks, pos: 0, end, sig };
    let c = p.combo()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    if c.kind().is_none() {
        return Err(IneqError::MixedKinds);
    }
    Ok(c)
}

/// The variables named inside `w±`/`b±` arguments, in order of first
/// appearance. `T` and `F` are constants, not variables.
pub fn infer_signature(text: &str) -> Result<Signature, IneqError> {
    let mut names: Vec<String> = Vec::new();
    for (_, t) in lex(text)? {
        let Tok::Term { body, .. } = t else { continue };
        let mut word = String::new();
        for ch in body.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                word.push(ch);
            } else if !word.is_empty() {
                let w = std::mem::take(&mut word);
                let is_ident = w.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_');
                if is_ident && w != "T" && w != "F" && !names.contains(&w) {
                    names.push(w);
                }
            }
        }
    }
    Signature::new(names).map_err(|e| IneqError::Formula { pos: 0, source: e })
}

/// [`parse_combo`] over the signature found by [`infer_signature`].
pub fn parse_combo_auto(text: &str) -> Result<(Combo, Signature), IneqError> {
    let sig = infer_signature(text)?;
    Ok((parse_combo(text, &sig)?, sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bd_core::Formula;

    fn sig() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    #[test]
    fn single_atom() {
        let c = parse_combo("w+[p & -p] >= 1", &sig()).unwrap();
        let Combo::Atom(a) = c else { panic!() };
        assert_eq!(a.kind, AtomKind::Weight);
        assert_eq!(a.rel, Rel::Ge);
        assert_eq!(a.bound, 1);
        assert_eq!(a.terms[0].formula, Formula::var(0).and(Formula::var(0).not()));
    }

    #[test]
    fn both_sides_and_constants() {
        let Combo::Atom(a) = parse_combo("w-(p) = w+(-p)", &sig()).unwrap() else { panic!() };
        assert_eq!(a.terms.len(), 2);
        assert_eq!(a.terms[1].coeff, -1);
        assert_eq!(a.terms[1].polarity, Polarity::Plus);
        let Combo::Atom(a) = parse_combo("2*b+[p] + 1 <= 3 - b+[q]", &sig()).unwrap() else { panic!() };
        assert_eq!(a.bound, 2);
        assert_eq!(a.terms.iter().map(|t| t.coeff).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn connectives_and_precedence() {
        let c = parse_combo("w+[p] >= 1 and not w+[q] > 0 or w+[p] = 0 -> w+[q] < 1 -> w+[p] <= 0", &sig()).unwrap();
        let Combo::Implies(l, r) = c else { panic!("implication binds loosest") };
        assert!(matches!(*l, Combo::Or(..)));
        assert!(matches!(*r, Combo::Implies(..)));
        let s = c_str("(w+[p] >= 1 -> w+[q] >= 1) -> w+[p] >= 0");
        assert_eq!(s, "(w+[p] >= 1 -> w+[q] >= 1) -> w+[p] >= 0");
    }

    fn c_str(text: &str) -> String {
        let c = parse_combo(text, &sig()).unwrap();
        c.display(&sig()).to_string()
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "w+[p] >= 1",
            "2*w+[p | q] - w-[q] + 3*w+[T] < -2",
            "not (b+[p] >= 1 and b+[q] >= 1) or b+[p & q] < 1",
            "b+[p] >= 1 and (b+[q] = 0 or b-[q] > 0)",
        ] {
            let once = c_str(text);
            assert_eq!(c_str(&once), once, "{text}");
        }
        assert_eq!(c_str("w+[p] + 0 >= 1"), "w+[p] >= 1");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_combo("w+[p] >= 1 and b+[q] >= 1", &sig()), Err(IneqError::MixedKinds)));
        assert!(matches!(parse_combo("w+[p] + b+[q] >= 1", &sig()), Err(IneqError::MixedKinds)));
        assert!(matches!(parse_combo("1 >= 0", &sig()), Err(IneqError::Syntax { .. })));
        assert!(matches!(parse_combo("w+[p >= 1", &sig()), Err(IneqError::Syntax { .. })));
        assert!(matches!(parse_combo("w+[r] >= 1", &sig()), Err(IneqError::Formula { pos: 3, .. })));
        assert!(matches!(parse_combo("w+[p] 1", &sig()), Err(IneqError::Syntax { .. })));
    }

    #[test]
    fn signature_inference() {
        let s = infer_signature("w+[q & T] >= 1 and w-(p | -q) < 1").unwrap();
        assert_eq!(s.names(), &["q".to_string(), "p".to_string()]);
        let (c, s) = parse_combo_auto("b+[x1] > 0").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(c.var_bound(), 1);
    }
}
