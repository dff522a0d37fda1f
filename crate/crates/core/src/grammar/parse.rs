//! Hand-written tokenizer and recursive-descent parser for the grammar DSL:
//!
//! ```text
//! grammar := rule (';' rule)* ';'?
//! rule    := LETTER '->' poly
//! poly    := term ('+' term)*
//! term    := factor ('*' factor)*
//! factor  := INT | LETTER ('^' INT)?
//! ```
//!
//! Letters are single ASCII alphabetic characters and products need an
//! explicit `*`, so `xy` is rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{GrammarError, MPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Letter(char),
    Int(BigInt),
    Arrow,
    Plus,
    Star,
    Caret,
    Semi,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, GrammarError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            c if c.is_ascii_alphabetic() => {
                out.push((pos, Tok::Letter(c)));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Int(digits.parse().expect("digit run"))));
            }
            '-' if chars.get(i + 1).map(|&(_, c)| c) == Some('>') => {
                out.push((pos, Tok::Arrow));
                i += 2;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            ';' => {
                out.push((pos, Tok::Semi));
                i += 1;
            }
            _ => return Err(GrammarError::UnknownCharacter { pos, ch: c }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, GrammarError> {
        Ok(Parser {
            toks: tokenize(src)?,
            idx: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |&(p, _)| p)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, GrammarError> {
        Err(GrammarError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    fn positive_int(&mut self) -> Result<BigInt, GrammarError> {
        match self.peek() {
            Some(Tok::Int(v)) if !v.is_zero() => {
                let v = v.clone();
                self.idx += 1;
                Ok(v)
            }
            Some(Tok::Int(_)) => self.syntax("integers must be positive"),
            _ => self.syntax("expected a positive integer"),
        }
    }

    fn factor(&mut self) -> Result<(BigInt, Monomial), GrammarError> {
        match self.peek() {
            Some(Tok::Int(_)) => Ok((self.positive_int()?, Monomial::one())),
            Some(&Tok::Letter(c)) => {
                self.idx += 1;
                let mut e = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.idx += 1;
                    let at = self.pos();
                    let v = self.positive_int()?;
                    e = v.to_u32().ok_or(GrammarError::Syntax {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                }
                Ok((BigInt::from(1), Monomial::power(c, e)))
            }
            _ => self.syntax("expected an integer or a letter"),
        }
    }

    fn term(&mut self) -> Result<(BigInt, Monomial), GrammarError> {
        let (mut coeff, mut mono) = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            let (c, m) = self.factor()?;
            coeff *= c;
            mono = mono.mul(&m);
        }
        if matches!(self.peek(), Some(Tok::Letter(_)) | Some(Tok::Int(_))) {
            return self.syntax("expected '*' between factors");
        }
        Ok((coeff, mono))
    }

    fn poly(&mut self) -> Result<MPoly, GrammarError> {
        let mut p = MPoly::zero();
        let (c, m) = self.term()?;
        p.add_term(m, c);
        while self.peek() == Some(&Tok::Plus) {
            self.idx += 1;
            let (c, m) = self.term()?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn rule(&mut self) -> Result<(usize, char, MPoly), GrammarError> {
        let at = self.pos();
        let letter = match self.bump() {
            Some(Tok::Letter(c)) => c,
            _ => {
                self.idx -= 1;
                return self.syntax("expected a letter on the left of '->'");
            }
        };
        if self.bump() != Some(Tok::Arrow) {
            self.idx -= 1;
            return self.syntax("expected '->'");
        }
        Ok((at, letter, self.poly()?))
    }
}

pub(super) fn parse_rules(src: &str) -> Result<BTreeMap<char, MPoly>, GrammarError> {
    let mut parser = Parser::new(src)?;
    let mut rules = BTreeMap::new();
    if parser.at_end() {
        return parser.syntax("expected at least one rule");
    }
    loop {
        let (pos, letter, rhs) = parser.rule()?;
        if rules.insert(letter, rhs).is_some() {
            return Err(GrammarError::DuplicateRule { pos, letter });
        }
        match parser.peek() {
            None => break,
            Some(Tok::Semi) => {
                parser.idx += 1;
                if parser.at_end() {
                    break;
                }
            }
            Some(_) => return parser.syntax("expected ';' or end of input"),
        }
    }
    Ok(rules)
}

/// Parses a polynomial in the DSL's term syntax, e.g. `x^2` or `2*x*y + z`.
pub fn parse_mpoly(src: &str) -> Result<MPoly, GrammarError> {
    let mut parser = Parser::new(src)?;
    let p = parser.poly()?;
    if !parser.at_end() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(p)
}
