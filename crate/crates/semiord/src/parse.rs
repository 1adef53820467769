//! Element literals.
//!
//! One small grammar covers every backend:
//!
//! * rational-valued backends take signed rational literals, optionally
//!   combined: `7/3`, `-5/8`, `1/2 + 1/3`;
//! * the quadratic backend takes integer combinations of the generators `a`
//!   (the unit) and `b` (the slope): `2*a + 3*b`, `b`;
//! * the tuple backends take one tuple literal: `(1,0,0)`, `-(1,2)`;
//! * naturals take a positive integer.
//!
//! Errors carry 1-based line and column positions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::backend::{BackendKind, Payload};
use crate::dyadic::DyadicRational;
use crate::error::{ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: u32,
    column: u32,
}

fn tokenize(text: &str) -> std::result::Result<(Vec<Spanned>, (u32, u32)), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1u32;
    let mut column = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, column);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<BigInt>().expect("digits");
                tokens.push(Spanned {
                    token: Token::Int(value),
                    line: tok_line,
                    column: tok_col,
                });
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Spanned {
                    token: Token::Ident(name),
                    line: tok_line,
                    column: tok_col,
                });
                continue;
            }
            _ => {}
        }
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            other => {
                return Err(ParseError::new(
                    tok_line,
                    tok_col,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        chars.next();
        column += 1;
        tokens.push(Spanned {
            token,
            line: tok_line,
            column: tok_col,
        });
    }
    Ok((tokens, (line, column)))
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn new(text: &str) -> std::result::Result<Self, ParseError> {
        let (tokens, end) = tokenize(text)?;
        Ok(Parser {
            tokens,
            pos: 0,
            end,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn here(&self) -> (u32, u32) {
        self.tokens
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::new(line, column, message)
    }

    fn advance(&mut self) -> Option<Spanned> {
        let spanned = self.tokens.get(self.pos).cloned();
        if spanned.is_some() {
            self.pos += 1;
        }
        spanned
    }

    fn eat(&mut self, token: &Token, what: &str) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == token => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn expect_end(&self) -> std::result::Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn integer(&mut self, what: &str) -> std::result::Result<BigInt, ParseError> {
        match self.peek() {
            Some(Token::Int(_)) => match self.advance().unwrap().token {
                Token::Int(v) => Ok(v),
                _ => unreachable!(),
            },
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn signed_integer(&mut self) -> std::result::Result<BigInt, ParseError> {
        let negative = matches!(self.peek(), Some(Token::Minus));
        if negative {
            self.pos += 1;
        }
        let value = self.integer("an integer")?;
        Ok(if negative { -value } else { value })
    }

    /// `int [ '/' int ]` with the sign handled by the caller.
    fn rational_atom(&mut self) -> std::result::Result<BigRational, ParseError> {
        let numer = self.integer("a number")?;
        if matches!(self.peek(), Some(Token::Slash)) {
            self.pos += 1;
            let denom_pos = self.here();
            let denom = self.integer("a denominator")?;
            if denom.is_zero() {
                return Err(ParseError::new(
                    denom_pos.0,
                    denom_pos.1,
                    "denominator is zero",
                ));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn rational_expression(&mut self) -> std::result::Result<BigRational, ParseError> {
        let mut negative = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            negative = true;
        }
        let mut total = self.rational_atom()?;
        if negative {
            total = -total;
        }
        loop {
            let subtract = match self.peek() {
                Some(Token::Plus) => false,
                Some(Token::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let term = self.rational_atom()?;
            total = if subtract { total - term } else { total + term };
        }
        self.expect_end()?;
        Ok(total)
    }

    /// Integer combinations of the generators `a` and `b`.
    fn generator_expression(&mut self) -> std::result::Result<(BigInt, BigInt), ParseError> {
        let mut unit = BigInt::zero();
        let mut slope = BigInt::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Token::Minus) => {
                    self.pos += 1;
                    true
                }
                Some(Token::Plus) if !first => {
                    self.pos += 1;
                    false
                }
                Some(_) if first => false,
                None if first => return Err(self.error("expected a generator term")),
                None => break,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            };
            let coeff = match self.peek() {
                Some(Token::Int(_)) => {
                    let value = self.integer("a coefficient")?;
                    self.eat(&Token::Star, "'*' between coefficient and generator")?;
                    value
                }
                Some(Token::Ident(_)) => BigInt::one(),
                _ => return Err(self.error("expected a coefficient or generator")),
            };
            let name_pos = self.here();
            let name = match self.advance().map(|s| s.token) {
                Some(Token::Ident(name)) => name,
                _ => {
                    return Err(ParseError::new(
                        name_pos.0,
                        name_pos.1,
                        "expected generator 'a' or 'b'",
                    ))
                }
            };
            let signed = if negative { -coeff } else { coeff };
            match name.as_str() {
                "a" => unit += signed,
                "b" => slope += signed,
                other => {
                    return Err(ParseError::new(
                        name_pos.0,
                        name_pos.1,
                        format!("unknown generator '{other}' (expected 'a' or 'b')"),
                    ))
                }
            }
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok((unit, slope))
    }

    fn tuple_expression(&mut self, arity: usize) -> std::result::Result<Vec<BigInt>, ParseError> {
        let negate = if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            true
        } else {
            false
        };
        self.eat(&Token::LParen, "'('")?;
        let mut items = vec![self.signed_integer()?];
        while matches!(self.peek(), Some(Token::Comma)) {
            self.pos += 1;
            items.push(self.signed_integer()?);
        }
        let close_pos = self.here();
        self.eat(&Token::RParen, "')'")?;
        self.expect_end()?;
        if items.len() != arity {
            return Err(ParseError::new(
                close_pos.0,
                close_pos.1,
                format!("expected a tuple of {arity} integers, got {}", items.len()),
            ));
        }
        if negate {
            for item in &mut items {
                *item = -item.clone();
            }
        }
        Ok(items)
    }
}

/// Parses a rational literal (used for descriptor arguments).
pub fn parse_rational_text(text: &str) -> std::result::Result<BigRational, ParseError> {
    let mut parser = Parser::new(text)?;
    parser.rational_expression()
}

/// Parses an element literal into the payload for the given backend kind.
pub(crate) fn parse_payload(kind: &BackendKind, text: &str) -> Result<Payload> {
    let mut parser = Parser::new(text)?;
    match kind {
        BackendKind::Rational { .. } => {
            let value = parser.rational_expression()?;
            Ok(Payload::Rational(value))
        }
        BackendKind::Dyadic => {
            let value = parser.rational_expression()?;
            match DyadicRational::from_rational(&value) {
                Some(dyadic) => Ok(Payload::Dyadic(dyadic)),
                None => Err(ParseError::new(
                    1,
                    1,
                    format!("{value} is not dyadic: the denominator must be a power of two"),
                )
                .into()),
            }
        }
        BackendKind::Naturals => {
            let value = parser.rational_expression()?;
            if !value.denom().is_one() || value.numer() < &BigInt::one() {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("{value} is not a positive integer"),
                )
                .into());
            }
            Ok(Payload::Natural(value.numer().clone()))
        }
        BackendKind::Quadratic(_) => {
            let (unit, slope) = parser.generator_expression()?;
            if unit.is_negative() || slope.is_negative() || (unit.is_zero() && slope.is_zero()) {
                return Err(ParseError::new(
                    1,
                    1,
                    format!(
                        "coefficients ({unit}, {slope}) must be non-negative and not both zero"
                    ),
                )
                .into());
            }
            Ok(Payload::Quadratic { unit, slope })
        }
        BackendKind::LexZ2 => {
            let items = parser.tuple_expression(2)?;
            let mut it = items.into_iter();
            Ok(Payload::LexZ2(it.next().unwrap(), it.next().unwrap()))
        }
        BackendKind::Heisenberg => {
            let items = parser.tuple_expression(3)?;
            let mut it = items.into_iter();
            Ok(Payload::Heisenberg(
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ))
        }
    }
}
