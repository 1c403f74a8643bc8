//! Recursive-descent reader for the scalar text grammar.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("+" | "-") unary | primary
//! primary := decimal | "sqrt(" integer ")"
//! ```
//!
//! Every input is read into the surd ring first; the rational and
//! approximate domains project out of that exact value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::surd::{is_square_free, Surd};
use crate::error::ParseError;

pub(crate) struct Parsed {
    pub value: Surd,
    /// Offset of the first `sqrt(` token, if any.
    pub first_sqrt: Option<usize>,
}

pub(crate) fn parse_expression(text: &str) -> Result<Parsed, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        first_sqrt: None,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(ParseError::new(0, "empty input"));
    }
    let value = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(ParseError::new(
            parser.pos,
            format!("unexpected character {:?}", parser.peek_char()),
        ));
    }
    Ok(Parsed {
        value,
        first_sqrt: parser.first_sqrt,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    first_sqrt: Option<usize>,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.peek().map(char::from).unwrap_or('\0')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Surd, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Surd, ParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let divisor = self.unary()?;
                    let q = divisor.as_rational().ok_or_else(|| {
                        ParseError::new(at, "division is only defined by a rational value")
                    })?;
                    if q.is_zero() {
                        return Err(ParseError::new(at, "division by zero"));
                    }
                    acc = acc.scale(&q.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Surd, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Surd, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let q = self.decimal()?;
                Ok(Surd::from_rational(q))
            }
            Some(b's') => self.sqrt(),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
            Some(_) => Err(ParseError::new(
                self.pos,
                format!("unexpected character {:?}", self.peek_char()),
            )),
        }
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn decimal(&mut self) -> Result<BigRational, ParseError> {
        let start = self.pos;
        let int_part = self.digits().to_vec();
        let mut frac_part = Vec::new();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac_part = self.digits().to_vec();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ParseError::new(start, "expected digits"));
        }
        let mut all = int_part;
        all.extend_from_slice(&frac_part);
        let numer = BigInt::parse_bytes(&all, 10).unwrap_or_else(BigInt::zero);
        let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
        Ok(BigRational::new(numer, denom))
    }

    fn sqrt(&mut self) -> Result<Surd, ParseError> {
        let start = self.pos;
        if !self.src[self.pos..].starts_with(b"sqrt") {
            return Err(ParseError::new(start, "expected `sqrt(`"));
        }
        self.pos += 4;
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Err(ParseError::new(self.pos, "expected `(` after sqrt"));
        }
        self.pos += 1;
        self.skip_ws();
        let arg_at = self.pos;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits = self.digits().to_vec();
        if digits.is_empty() {
            return Err(ParseError::new(arg_at, "sqrt takes an integer argument"));
        }
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(ParseError::new(self.pos, "expected `)` closing sqrt"));
        }
        self.pos += 1;
        let radicand = std::str::from_utf8(&digits)
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| ParseError::new(arg_at, "sqrt argument is too large"))?;
        if negative || radicand < 2 {
            return Err(ParseError::new(arg_at, "sqrt argument must be an integer greater than 1"));
        }
        if !is_square_free(radicand) {
            return Err(ParseError::new(
                arg_at,
                format!("sqrt argument {radicand} is not square-free"),
            ));
        }
        self.first_sqrt.get_or_insert(start);
        Ok(Surd::sqrt_of(radicand, BigRational::one()))
    }
}
