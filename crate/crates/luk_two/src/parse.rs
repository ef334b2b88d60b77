//! Grammar, loosest binding first:
//!
//! ```text
//! equiv   := impl (('<->' | '<=>') equiv)?
//! impl    := add (('->' | '~>' | '=>') impl)?
//! add     := mul (('|' | '(+)' | '(-)') mul)*
//! mul     := unary (('&' | '&.') unary)*
//! unary   := ('~' | '-' | 'D' | 'Dt') unary | primary
//! primary := 'T' | 'F' | IDENT | IDENT '[' ... ']' | '(' equiv ')'
//! ```
//!
//! A bracketed atom `Name[...]` is handed to a caller-supplied atom parser
//! together with its raw body.

use std::fmt;

use crate::{Logic, LukError, Outer};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Bracketed { name: String, body: String, body_pos: usize },
    Top,
    Bot,
    Sim,
    Neg,
    Delta,
    DeltaTop,
    Imp,
    WImp,
    SImp,
    Equiv,
    SEquiv,
    And,
    Fus,
    Or,
    Oplus,
    Ominus,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> LukError {
    LukError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LukError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, s: &str| s.chars().enumerate().all(|(k, c)| chars.get(i + k) == Some(&c));
    const SYMBOLS: [(&str, Tok); 14] = [
        ("<->", Tok::Equiv),
        ("<=>", Tok::SEquiv),
        ("(+)", Tok::Oplus),
        ("(-)", Tok::Ominus),
        ("->", Tok::Imp),
        ("~>", Tok::WImp),
        ("=>", Tok::SImp),
        ("&.", Tok::Fus),
        ("~", Tok::Sim),
        ("-", Tok::Neg),
        ("&", Tok::And),
        ("|", Tok::Or),
        ("(", Tok::LParen),
        (")", Tok::RParen),
    ];
    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        for (sym, tok) in &SYMBOLS {
            if starts(i, sym) {
                out.push((i, tok.clone()));
                i += sym.chars().count();
                continue 'outer;
            }
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if chars.get(i) == Some(&'[') {
                let mut depth = 0usize;
                let mut j = i;
                loop {
                    match chars.get(j) {
                        None => return Err(syntax(i, "unclosed `[`")),
                        Some('[') => depth += 1,
                        Some(']') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                let body = chars[i + 1..j].iter().collect();
                out.push((start, Tok::Bracketed { name: word, body, body_pos: i + 1 }));
                i = j + 1;
                continue;
            }
            let tok = match word.as_str() {
                "T" => Tok::Top,
                "F" => Tok::Bot,
                "D" => Tok::Delta,
                "Dt" => Tok::DeltaTop,
                _ => Tok::Ident(word),
            };
            out.push((start, tok));
            continue;
        }
        let tok = match c {
            '¬' => Tok::Neg,
            '∼' => Tok::Sim,
            '→' => Tok::Imp,
            '⊕' => Tok::Oplus,
            '⊖' => Tok::Ominus,
            '∧' => Tok::And,
            '∨' => Tok::Or,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bot,
            '△' | 'Δ' => Tok::Delta,
            other => return Err(syntax(i, format!("unexpected character `{other}`"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// Parses an atom: its name, the bracket body if any, and the position of
/// the body in the input.
pub type AtomParser<'a, A> = dyn FnMut(&str, Option<&str>, usize) -> Result<A, LukError> + 'a;

struct Parser<'a, 'b, A> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    atom: &'a mut AtomParser<'b, A>,
}

impl<A> Parser<'_, '_, A> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn equiv(&mut self) -> Result<Outer<A>, LukError> {
        let lhs = self.imp()?;
        match self.peek() {
            Some(Tok::Equiv) => {
                self.pos += 1;
                Ok(lhs.equiv(self.equiv()?))
            }
            Some(Tok::SEquiv) => {
                self.pos += 1;
                Ok(lhs.sequiv(self.equiv()?))
            }
            _ => Ok(lhs),
        }
    }

    fn imp(&mut self) -> Result<Outer<A>, LukError> {
        let lhs = self.add()?;
        let op = match self.peek() {
            Some(Tok::Imp) => Outer::imp,
            Some(Tok::WImp) => Outer::wimp,
            Some(Tok::SImp) => Outer::simp,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        Ok(op(lhs, self.imp()?))
    }

    fn add(&mut self) -> Result<Outer<A>, LukError> {
        let mut acc = self.mul()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Or) => Outer::or,
                Some(Tok::Oplus) => Outer::oplus,
                Some(Tok::Ominus) => Outer::ominus,
                _ => return Ok(acc),
            };
            self.pos += 1;
            acc = op(acc, self.mul()?);
        }
    }

    fn mul(&mut self) -> Result<Outer<A>, LukError> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::And) => Outer::and,
                Some(Tok::Fus) => Outer::fus,
                _ => return Ok(acc),
            };
            self.pos += 1;
            acc = op(acc, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Outer<A>, LukError> {
        let op = match self.peek() {
            Some(Tok::Sim) => Outer::sim,
            Some(Tok::Neg) => Outer::neg,
            Some(Tok::Delta) => Outer::delta,
            Some(Tok::DeltaTop) => Outer::delta_top,
            _ => return self.primary(),
        };
        self.pos += 1;
        Ok(op(self.unary()?))
    }

    fn primary(&mut self) -> Result<Outer<A>, LukError> {
        let pos = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(syntax(pos, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Top => Ok(Outer::Top),
            Tok::Bot => Ok(Outer::Bot),
            Tok::Ident(name) => Ok(Outer::Atom((self.atom)(&name, None, pos)?)),
            Tok::Bracketed { name, body, body_pos } => Ok(Outer::Atom((self.atom)(&name, Some(&body), body_pos)?)),
            Tok::LParen => {
                let inner = self.equiv()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(syntax(pos, "expected a formula")),
        }
    }
}

/// Parses with a custom atom parser and checks the connectives of `logic`.
pub fn parse_outer_with<A>(text: &str, logic: Logic, atom: &mut AtomParser<'_, A>) -> Result<Outer<A>, LukError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { toks, pos: 0, end, atom };
    let f = p.equiv()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.here(), "unexpected trailing input"));
    }
    f.check(logic)?;
    Ok(f)
}

/// Parses a formula whose atoms are plain identifiers.
pub fn parse_outer(text: &str, logic: Logic) -> Result<Outer<String>, LukError> {
    parse_outer_with(text, logic, &mut |name, body, pos| match body {
        None => Ok(name.to_string()),
        Some(_) => Err(syntax(pos, format!("`{name}[...]` is not a propositional atom"))),
    })
}

fn prec<A>(f: &Outer<A>) -> u8 {
    use Outer::*;
    match f {
        Equiv(..) | SEquiv(..) => 1,
        Imp(..) | WImp(..) | SImp(..) => 2,
        Or(..) | Oplus(..) | Ominus(..) => 3,
        And(..) | Fus(..) => 4,
        Neg(_) | Sim(_) | Delta(_) | DeltaTop(_) => 5,
        Atom(_) | Top | Bot => 6,
    }
}

impl<A> Outer<A> {
    /// Prints in the input syntax with as few parentheses as the grammar
    /// allows.
    pub fn render(&self, atom: &dyn Fn(&A) -> String) -> String {
        use Outer::*;
        let wrap = |x: &Outer<A>, min: u8| {
            let s = x.render(atom);
            if prec(x) < min {
                format!("({s})")
            } else {
                s
            }
        };
        match self {
            Atom(a) => atom(a),
            Top => "T".into(),
            Bot => "F".into(),
            Neg(x) | Sim(x) => format!("{}{}", self.connective().unwrap(), wrap(x, 5)),
            Delta(x) | DeltaTop(x) => format!("{} {}", self.connective().unwrap(), wrap(x, 5)),
            Imp(x, y) | WImp(x, y) | SImp(x, y) | Equiv(x, y) | SEquiv(x, y) => {
                let l = prec(self);
                format!("{} {} {}", wrap(x, l + 1), self.connective().unwrap(), wrap(y, l))
            }
            Or(x, y) | Oplus(x, y) | Ominus(x, y) | And(x, y) | Fus(x, y) => {
                let l = prec(self);
                format!("{} {} {}", wrap(x, l), self.connective().unwrap(), wrap(y, l + 1))
            }
        }
    }
}

impl<A: fmt::Display> fmt::Display for Outer<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|a| a.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(text: &str, logic: Logic) -> String {
        parse_outer(text, logic).unwrap().to_string()
    }

    #[test]
    fn precedence_and_printing() {
        assert_eq!(rt("p -> q -> r", Logic::L2), "p -> q -> r");
        assert_eq!(rt("(p -> q) -> r", Logic::L2), "(p -> q) -> r");
        assert_eq!(rt("p & q | r", Logic::L2), "p & q | r");
        assert_eq!(rt("p & (q | r)", Logic::L2), "p & (q | r)");
        assert_eq!(rt("p (+) (q (-) r)", Logic::NL), "p (+) (q (-) r)");
        assert_eq!(rt("(p (+) q) (-) r", Logic::NL), "p (+) q (-) r");
        assert_eq!(rt("~-D(p &. q)", Logic::L2), "~-D (p &. q)");
        assert_eq!(rt("Dt p <-> T", Logic::L2), "Dt p <-> T");
        assert_eq!(rt("¬p → ∼q", Logic::L2), "-p -> ~q");
        for text in ["-(p ~> q) <-> p &. -q", "p => q <=> -q => -p", "D (p -> q) -> D p -> D q", "~(p -> ~q) | F"] {
            let logic = if text.contains("~>") || text.contains("=>") { Logic::NL } else { Logic::L2 };
            let once = rt(text, logic);
            assert_eq!(rt(&once, logic), once);
        }
    }

    #[test]
    fn language_checks() {
        assert!(matches!(parse_outer("p ~> q", Logic::L2), Err(LukError::Connective { connective: "~>", .. })));
        assert!(matches!(parse_outer("D p", Logic::NL), Err(LukError::Connective { .. })));
        assert!(matches!(parse_outer("p -> q", Logic::NL), Err(LukError::Connective { .. })));
        assert!(matches!(parse_outer("p ->", Logic::L2), Err(LukError::Syntax { .. })));
        assert!(matches!(parse_outer("B[p]", Logic::L2), Err(LukError::Syntax { .. })));
    }

    #[test]
    fn bracketed_atoms_reach_the_callback() {
        let f = parse_outer_with("Pr[p & q] -> ~B[-p]", Logic::L2, &mut |name, body, _| {
            Ok(format!("{name}:{}", body.unwrap_or("")))
        })
        .unwrap();
        assert_eq!(f.to_string(), "Pr:p & q -> ~B:-p");
    }
}
