//! Words over named automorphism generators.
//!
//! Syntax: juxtaposition or `*` for products, `x^k` for powers (negative
//! allowed), `[x,y]` for commutators, parentheses for grouping and `1` for
//! the empty word. Products read as composition, so `xy` means `x ∘ y`, and
//! `[x,y] = x y x^{-1} y^{-1}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::aut::Automorphism;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Gen(String),
    Pow(Box<Word>, i64),
    Product(Vec<Word>),
    Comm(Box<Word>, Box<Word>),
}

impl Word {
    pub fn gen(name: &str) -> Word {
        Word::Gen(name.to_string())
    }

    pub fn pow(self, k: i64) -> Word {
        Word::Pow(Box::new(self), k)
    }

    pub fn comm(x: Word, y: Word) -> Word {
        Word::Comm(Box::new(x), Box::new(y))
    }

    pub fn product(parts: Vec<Word>) -> Word {
        Word::Product(parts)
    }

    /// Generator names in order of first appearance.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Word::Gen(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Word::Pow(w, _) => w.collect(out),
            Word::Product(ws) => ws.iter().for_each(|w| w.collect(out)),
            Word::Comm(x, y) => {
                x.collect(out);
                y.collect(out);
            }
        }
    }

    /// Evaluates under an assignment of generators; `identity` is the value
    /// of the empty product.
    pub fn eval(
        &self,
        gens: &HashMap<String, Automorphism>,
        identity: &Automorphism,
    ) -> Result<Automorphism> {
        Ok(match self {
            Word::Gen(n) => *gens
                .get(n)
                .ok_or_else(|| Error::UnknownGenerator(n.clone()))?,
            Word::Pow(w, k) => w.eval(gens, identity)?.pow(*k),
            Word::Product(ws) => {
                let mut acc = *identity;
                for w in ws {
                    acc = acc.compose(&w.eval(gens, identity)?)?;
                }
                acc
            }
            Word::Comm(x, y) => {
                let x = x.eval(gens, identity)?;
                let y = y.eval(gens, identity)?;
                x.compose(&y)?
                    .compose(&x.inverse())?
                    .compose(&y.inverse())?
            }
        })
    }

    fn is_atom(&self) -> bool {
        match self {
            Word::Gen(_) | Word::Comm(..) => true,
            Word::Product(ws) => ws.is_empty(),
            Word::Pow(..) => false,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(n) => f.write_str(n),
            Word::Pow(w, k) => {
                if w.is_atom() {
                    write!(f, "{w}^{k}")
                } else {
                    write!(f, "({w})^{k}")
                }
            }
            Word::Product(ws) if ws.is_empty() => f.write_str("1"),
            Word::Product(ws) => {
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(w, Word::Product(_)) && !w.is_atom() {
                        write!(f, "({w})")?;
                    } else {
                        write!(f, "{w}")?;
                    }
                }
                Ok(())
            }
            Word::Comm(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", ch as char)))
        }
    }

    fn product(&mut self) -> Result<Word> {
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') if !parts.is_empty() => {
                    self.pos += 1;
                    parts.push(self.factor()?);
                }
                Some(ch) if ch == b'(' || ch == b'[' || ch.is_ascii_alphanumeric() => {
                    parts.push(self.factor()?);
                }
                _ => break,
            }
        }
        if parts.is_empty() {
            return Err(self.err("empty word"));
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Word::Product(parts)
        })
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            w = w.pow(self.int()?);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.product()?;
                self.expect(b',')?;
                let y = self.product()?;
                self.expect(b']')?;
                Ok(Word::comm(x, y))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::Product(Vec::new()))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'~')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Word::gen(name))
            }
            _ => Err(self.err("expected generator, `(`, `[` or `1`")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("expected integer exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in [
            "phi0^16",
            "phi1*phi0*phi1^-1*phi0^3",
            "(phi1*phi0)^2",
            "[phi1,phi2]",
            "[[psi1,psi2],psi1]",
            "psi1~^2",
            "1",
        ] {
            let w: Word = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
        }
    }

    #[test]
    fn juxtaposition_is_product() {
        let a: Word = "phi1 phi0".parse().unwrap();
        let b: Word = "phi1*phi0".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generators_in_order() {
        let w: Word = "[psi2,psi1]*psi2^3".parse().unwrap();
        assert_eq!(w.generators(), vec!["psi2", "psi1"]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<Word>(), Err(Error::Parse(_))));
        assert!(matches!("[x,".parse::<Word>(), Err(Error::Parse(_))));
        assert!(matches!("x^".parse::<Word>(), Err(Error::Parse(_))));
        assert!(matches!("x)".parse::<Word>(), Err(Error::Parse(_))));
    }
}
