//! Text format for rings and polynomials.
//!
//! A ring header looks like
//!
//! ```text
//! ring x,y,z; wt 1,1,2; char 32003
//! ```
//!
//! where `char 0` means the rationals. The `wt` clause may be omitted, in
//! which case all weights are 1.
//!
//! Polynomials follow the grammar
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Integers may be arbitrarily large; they are reduced into the field.
//! Printing a polynomial with `Display` and parsing it back gives the same
//! polynomial.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

use super::{PolyRing, Polynomial, Ring};

/// The parsed content of a ring header, before a field is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHeader {
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    pub characteristic: u64,
}

impl RingHeader {
    /// Builds the ring over `field`, which must have the declared characteristic.
    pub fn into_ring<F: Field>(self, field: F) -> Result<Ring<F>> {
        if field.characteristic() != self.characteristic {
            return Err(AlgebraError::FieldMismatch(format!(
                "header declares char {}, field is {}",
                self.characteristic,
                field.tag()
            )));
        }
        PolyRing::new(self.names, self.weights, field)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a single-line ring header.
pub fn parse_ring_header(text: &str) -> Result<RingHeader> {
    let text = text.trim();
    let body = text
        .strip_prefix("ring")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| err(1, 1, "expected `ring`"))?;
    let mut names = None;
    let mut weights = None;
    let mut characteristic = None;
    for (k, clause) in body.split(';').enumerate() {
        let clause = clause.trim();
        let col = text.find(clause).map_or(1, |c| c + 1);
        if k == 0 {
            let v: Vec<String> = clause.split(',').map(|s| s.trim().to_string()).collect();
            if v.iter().any(|s| s.is_empty()) {
                return Err(err(1, col, "empty variable name"));
            }
            names = Some(v);
        } else if let Some(rest) = clause.strip_prefix("wt") {
            let v: std::result::Result<Vec<u32>, _> = rest.split(',').map(|s| s.trim().parse::<u32>()).collect();
            weights = Some(v.map_err(|_| err(1, col, "weights must be positive integers"))?);
        } else if let Some(rest) = clause.strip_prefix("char") {
            characteristic = Some(
                rest.trim()
                    .parse::<u64>()
                    .map_err(|_| err(1, col, "invalid characteristic"))?,
            );
        } else if !clause.is_empty() {
            return Err(err(1, col, format!("unknown clause {:?}", clause)));
        }
    }
    let names = names.ok_or_else(|| err(1, 1, "missing variables"))?;
    let weights = weights.unwrap_or_else(|| vec![1; names.len()]);
    let characteristic = characteristic.ok_or_else(|| err(1, 1, "missing `char` clause"))?;
    Ok(RingHeader {
        names,
        weights,
        characteristic,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let (mut line, mut col) = (1, 1);
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = (line, col);
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
            if c.is_ascii_digit() {
                let j = (i..chars.len())
                    .find(|&j| !chars[j].is_ascii_digit())
                    .unwrap_or(chars.len());
                let s: String = chars[i..j].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), start.0, start.1));
                col += j - i;
                i = j;
            } else if c.is_ascii_alphabetic() {
                let j = (i..chars.len())
                    .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                    .unwrap_or(chars.len());
                let s: String = chars[i..j].iter().collect();
                toks.push((Tok::Ident(s), start.0, start.1));
                col += j - i;
                i = j;
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), line, col));
                col += 1;
                i += 1;
            } else {
                return Err(err(line, col, format!("unexpected character {:?}", c)));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end: (line, col),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

struct Parser<'a, F: Field> {
    ring: &'a Ring<F>,
    lex: Lexer,
}

impl<F: Field> Parser<'_, F> {
    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut neg = if self.lex.eat('-') {
            true
        } else {
            self.lex.eat('+');
            false
        };
        let mut acc = Polynomial::zero(self.ring);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.lex.eat('+') {
                neg = false;
            } else if self.lex.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while self.lex.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.lex.eat('^') {
            match self.lex.peek() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n.clone())
                        .ok()
                        .filter(|&e| e <= u16::MAX as u32)
                        .ok_or(AlgebraError::ExponentOverflow)?;
                    self.lex.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.lex.fail("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        let field = self.ring.field();
        match self.lex.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.lex.pos += 1;
                let mut den = BigInt::one();
                if self.lex.eat('/') {
                    match self.lex.peek() {
                        Some(Tok::Int(d)) => {
                            den = d.clone();
                            self.lex.pos += 1;
                        }
                        _ => return self.lex.fail("expected denominator"),
                    }
                }
                match field.from_ratio(&num, &den) {
                    Some(c) => Ok(Polynomial::constant(self.ring, c)),
                    None => self.lex.fail("denominator vanishes in the field"),
                }
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.lex.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => self.lex.fail(format!("unknown variable {:?}", name)),
            },
            Some(Tok::Sym('(')) => {
                self.lex.pos += 1;
                let e = self.expr()?;
                if !self.lex.eat(')') {
                    return self.lex.fail("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.lex.fail("expected a number, variable or `(`"),
            None => self.lex.fail("unexpected end of input"),
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse_polynomial<F: Field>(ring: &Ring<F>, text: &str) -> Result<Polynomial<F>> {
    let mut p = Parser {
        ring,
        lex: Lexer::new(text)?,
    };
    let out = p.expr()?;
    if p.lex.peek().is_some() {
        return p.lex.fail("unexpected trailing input");
    }
    Ok(out)
}

/// Parses one polynomial per nonempty line. Lines starting with `#` are skipped.
/// Error positions refer to the whole text.
pub fn parse_polynomial_lines<F: Field>(ring: &Ring<F>, text: &str) -> Result<Vec<Polynomial<F>>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let p = parse_polynomial(ring, line).map_err(|e| match e {
            AlgebraError::Parse { column, message, .. } => AlgebraError::Parse {
                line: k + 1,
                column,
                message,
            },
            other => other,
        })?;
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    #[test]
    fn header_round_trip() {
        let h = parse_ring_header("ring x,y,z; wt 1,1,2; char 32003").unwrap();
        assert_eq!(h.names, vec!["x", "y", "z"]);
        assert_eq!(h.weights, vec![1, 1, 2]);
        let r = h.into_ring(PrimeField::new(32003).unwrap()).unwrap();
        assert_eq!(r.header(), "ring x,y,z; wt 1,1,2; char 32003");
        let h = parse_ring_header("ring a,b; char 0").unwrap();
        assert_eq!(h.weights, vec![1, 1]);
        assert!(h.clone().into_ring(PrimeField::new(7).unwrap()).is_err());
        assert!(h.into_ring(RationalField).is_ok());
    }

    #[test]
    fn parses_and_prints() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], vec![1, 1], RationalField).unwrap();
        let p = parse_polynomial(&r, "(x + y)^2 - 2*x*y + 1/2").unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2 + 1/2");
        let q = parse_polynomial(&r, &p.to_string()).unwrap();
        assert_eq!(p, q);
        let n = parse_polynomial(&r, "-3/4*x*y^3 - 1").unwrap();
        assert_eq!(n.to_string(), "-3/4*x*y^3 - 1");
    }

    #[test]
    fn big_integers_reduce() {
        let r = PolyRing::standard("x", 1, PrimeField::new(7).unwrap()).unwrap();
        let p = parse_polynomial(&r, "100000000000000000000000001*x1").unwrap();
        // 10^26 = 3^26 = 3^2 mod 7, so the coefficient is 2 + 1
        assert_eq!(p.to_string(), "3*x1");
        assert_eq!(parse_polynomial(&r, "7*x1 + 7").unwrap().to_string(), "0");
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::standard("x", 2, RationalField).unwrap();
        match parse_polynomial(&r, "x1 + q") {
            Err(AlgebraError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{:?}", other),
        }
        match parse_polynomial_lines(&r, "x1\n\nx2 +") {
            Err(AlgebraError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{:?}", other),
        }
        assert!(parse_polynomial(&r, "1/0").is_err());
        assert!(parse_polynomial(&r, "x1^70000").is_err());
    }
}
