//! Tokenizer and polynomial expression parser (`3/2*x^2*y - u`).
//!
//! The token stream is shared with the problem-file grammar of the command
//! line tool, so positions are tracked as 1-based line and column.

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Split `src` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(Token { tok: Tok::Int(text.parse().unwrap()), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - s;
            out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), line: l0, col: c0 });
        } else if "+-*/^()[],;=<>{}:.".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            i += 1;
            col += 1;
        } else {
            return Err(AlgebraError::Parse { line, col, expected: format!("a valid character, found `{c}`") });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Cursor over a token stream with polynomial parsing.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn error(&self, expected: &str) -> AlgebraError {
        let t = self.peek();
        AlgebraError::Parse { line: t.line, col: t.col, expected: format!("{expected}, found {}", t.tok.describe()) }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.at_sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.error(&format!("`{kw}`"))),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => Err(self.error("integer")),
        }
    }

    /// Signed machine integer, e.g. window bounds.
    pub fn expect_i64(&mut self) -> Result<i64> {
        let neg = if self.at_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let n = self.expect_int()?;
        let v: i64 = n.try_into().map_err(|_| self.error("integer in range"))?;
        Ok(if neg { -v } else { v })
    }

    pub fn parse_poly<F: Field>(&mut self, names: &[String]) -> Result<Poly<F>> {
        let n = names.len();
        let mut acc = Poly::zero(n);
        let mut sign = if self.at_sym('-') {
            self.next();
            -1
        } else {
            if self.at_sym('+') {
                self.next();
            }
            1
        };
        loop {
            let t = self.parse_term::<F>(names)?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            if self.at_sym('+') {
                sign = 1;
            } else if self.at_sym('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
            self.next();
        }
    }

    fn parse_term<F: Field>(&mut self, names: &[String]) -> Result<Poly<F>> {
        let mut acc = self.parse_factor::<F>(names)?;
        while self.at_sym('*') {
            self.next();
            acc = acc.mul(&self.parse_factor::<F>(names)?);
        }
        Ok(acc)
    }

    fn parse_factor<F: Field>(&mut self, names: &[String]) -> Result<Poly<F>> {
        let n = names.len();
        let base = match self.peek().tok.clone() {
            Tok::Int(num) => {
                self.next();
                let den = if self.at_sym('/') {
                    self.next();
                    self.expect_int()?
                } else {
                    BigInt::from(1)
                };
                let c = F::from_fraction(&num, &den).ok_or_else(|| self.error("nonzero denominator"))?;
                Poly::constant(n, c)
            }
            Tok::Ident(name) => match names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.next();
                    Poly::var(n, i)
                }
                None => return Err(self.error(&format!("one of the variables {}", names.join(", ")))),
            },
            Tok::Sym('(') => {
                self.next();
                let p = self.parse_poly::<F>(names)?;
                self.expect_sym(')')?;
                p
            }
            Tok::Sym('-') => {
                self.next();
                return Ok(self.parse_factor::<F>(names)?.neg());
            }
            _ => return Err(self.error("number, variable or `(`")),
        };
        if self.at_sym('^') {
            self.next();
            let e = self.expect_int()?;
            let e: u32 = e.try_into().map_err(|_| self.error("small exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// Parse a whole string as one polynomial in the named variables.
pub fn parse_poly<F: Field>(src: &str, names: &[String]) -> Result<Poly<F>> {
    let toks = tokenize(src)?;
    let mut c = Cursor::new(&toks);
    let p = c.parse_poly(names)?;
    if !c.at_eof() {
        return Err(c.error("operator or end of input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn round_trips_display() {
        let n = names(&["x", "y", "u"]);
        let p: Poly<Rational> = parse_poly("3/2*x^2*y - u", &n).unwrap();
        assert_eq!(p.display(&n).to_string(), "3/2*x^2*y - u");
        let q: Poly<Rational> = parse_poly(&p.display(&n).to_string(), &n).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reports_position() {
        let n = names(&["x"]);
        let e = parse_poly::<Rational>("x +\n  z", &n).unwrap_err();
        assert!(matches!(e, AlgebraError::Parse { line: 2, col: 3, .. }));
    }

    #[test]
    fn parentheses_and_powers() {
        let n = names(&["x", "y"]);
        let p: Poly<Rational> = parse_poly("(x+y)^2 - x^2 - 2*x*y", &n).unwrap();
        let q: Poly<Rational> = parse_poly("y^2", &n).unwrap();
        assert_eq!(p, q);
    }
}
