//! Parser for the ASCII polynomial grammar:
//!
//! ```text
//! poly := term ('+' term)*
//! term := nat | nat? 'x' ('^' nat)?
//! ```
//!
//! Whitespace is insignificant and like terms are collected.

use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use super::NatPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected `{found}` at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("negative coefficient at position {pos}: `-` is not allowed in N[x]")]
    Negative { pos: usize },
    #[error("exponent `{text}` at position {pos} is too large")]
    ExponentTooLarge { pos: usize, text: String },
}

struct Cursor {
    chars: Vec<(usize, char)>,
    idx: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Self {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            idx: 0,
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.idx).copied()
    }

    fn bump(&mut self) {
        self.idx += 1;
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek().map(|(_, c)| c) == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParsePolyError {
        match self.peek() {
            Some((pos, '-')) => ParsePolyError::Negative { pos },
            Some((pos, found)) => ParsePolyError::Unexpected { pos, found, expected },
            None => ParsePolyError::UnexpectedEnd { expected },
        }
    }

    fn nat(&mut self) -> Option<(usize, String)> {
        let start = self.peek()?.0;
        let mut digits = String::new();
        while let Some((_, c)) = self.peek().filter(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
            self.bump();
        }
        (!digits.is_empty()).then_some((start, digits))
    }
}

fn parse_term(cur: &mut Cursor) -> Result<(BigUint, usize), ParsePolyError> {
    let coeff = cur.nat();
    if !cur.eat('x') {
        return match coeff {
            Some((_, digits)) => Ok((digits.parse().expect("ascii digits"), 0)),
            None => Err(cur.unexpected("a coefficient or `x`")),
        };
    }
    let coeff = coeff.map_or_else(|| BigUint::from(1u32), |(_, d)| d.parse().expect("ascii digits"));
    let exp = if cur.eat('^') {
        let (pos, text) = cur.nat().ok_or_else(|| cur.unexpected("an exponent"))?;
        text.parse::<usize>()
            .map_err(|_| ParsePolyError::ExponentTooLarge { pos, text })?
    } else {
        1
    };
    Ok((coeff, exp))
}

impl FromStr for NatPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        if cur.peek().is_none() {
            return Err(ParsePolyError::Empty);
        }
        let mut coeffs: Vec<BigUint> = Vec::new();
        loop {
            let (c, k) = parse_term(&mut cur)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigUint::default());
            }
            coeffs[k] += c;
            if cur.peek().is_none() {
                break;
            }
            if !cur.eat('+') {
                return Err(cur.unexpected("`+`"));
            }
        }
        Ok(NatPoly::new(coeffs))
    }
}
