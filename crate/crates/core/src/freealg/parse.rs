//! Text front end for polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff | [coeff '*'] factor ('*' factor)*
//! factor := name ['^' posint]
//! coeff  := integer | integer '/' posint
//! ```
//!
//! Whitespace is ignored. A bare coefficient is a multiple of the empty word.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::scalar::{Field, Scalar};
use super::word::{Alphabet, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
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
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.len(),
            alphabet,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn poly(&mut self, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(field);
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let (c, w) = self.term(field)?;
            out.add_term(w, if negative { c.neg() } else { c });
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self, field: Field) -> Result<(Scalar, Word)> {
        let coeff = if let Some(Tok::Num(_)) = self.peek() {
            let c = self.coeff(field)?;
            if !self.eat(&Tok::Star) {
                return Ok((c, Word::empty()));
            }
            c
        } else {
            field.one()
        };
        Ok((coeff, self.product()?))
    }

    fn coeff(&mut self, field: Field) -> Result<Scalar> {
        let num = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return self.err("expected a number"),
        };
        self.pos += 1;
        if self.eat(&Tok::Slash) {
            let den = match self.peek() {
                Some(Tok::Num(d)) if !d.is_zero() => d.clone(),
                _ => return self.err("expected a positive denominator"),
            };
            self.pos += 1;
            field.fraction(&num, &den)
        } else {
            Ok(field.fraction(&num, &BigInt::one())?)
        }
    }

    fn product(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            let name = match self.peek() {
                Some(Tok::Name(n)) => n.clone(),
                _ => return self.err("expected a generator name"),
            };
            let x = self
                .alphabet
                .lookup(&name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            self.pos += 1;
            let mut power = 1usize;
            if self.eat(&Tok::Caret) {
                power = match self.peek() {
                    Some(Tok::Num(n)) if !n.is_zero() => match usize::try_from(n) {
                        Ok(p) => p,
                        Err(_) => return self.err("exponent too large"),
                    },
                    _ => return self.err("expected a positive exponent"),
                };
                self.pos += 1;
            }
            letters.extend(std::iter::repeat_n(x, power));
            if !self.eat(&Tok::Star) {
                break;
            }
        }
        Ok(Word::new(letters))
    }
}

/// Parses a polynomial over `field`; see the module docs for the grammar.
pub fn parse_poly(text: &str, alphabet: &Alphabet, field: Field) -> Result<Poly> {
    let mut p = Parser::new(text, alphabet)?;
    let out = p.poly(field)?;
    p.finish()?;
    Ok(out)
}

/// Parses a monomial: a product of factors, or `1` for the empty word.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut p = Parser::new(text, alphabet)?;
    if let Some(Tok::Num(n)) = p.peek() {
        if n.is_one() {
            p.pos += 1;
            p.finish()?;
            return Ok(Word::empty());
        }
        return p.err("a word cannot carry a coefficient");
    }
    let w = p.product()?;
    p.finish()?;
    Ok(w)
}

impl Alphabet {
    pub fn parse_poly(&self, text: &str, field: Field) -> Result<Poly> {
        parse_poly(text, self, field)
    }
}
